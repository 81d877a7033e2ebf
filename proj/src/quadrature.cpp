#include "covbridge/quadrature.hpp"

#include <cmath>
#include <limits>

#include "covbridge/errors.hpp"

namespace covbridge::quad {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    long evals;
    long max_evals;
    double err_sum;
    int max_depth;

    double eval(double x) {
        if (++evals > max_evals)
            throw convergence_error("adaptive_simpson: evaluation budget exhausted");
        return f(x);
    }
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.eval(lm);
    const double frm = st.eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= st.max_depth || std::fabs(delta) <= 15.0 * tol) {
        // value gets the Richardson correction; the reported error does
        // not take the full 1/15 credit for it
        st.err_sum += std::fabs(delta) / 4.0;
        return left + right + delta / 15.0;
    }
    return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

IntegralResult adaptive_simpson(const std::function<double(double)>& f, double a,
                                double b, double abs_tol, int max_depth,
                                long max_evals) {
    if (!(abs_tol > 0.0))
        throw validation_error("adaptive_simpson: tolerance must be > 0");
    if (a == b)
        return {0.0, 0.0, 0};
    SimpsonState st{f, 0, max_evals, 0.0, max_depth};
    const double fa = st.eval(a);
    const double m = 0.5 * (a + b);
    const double fm = st.eval(m);
    const double fb = st.eval(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double v = simpson_recurse(st, a, b, fa, fm, fb, whole, abs_tol, 0);
    return {v, st.err_sum, st.evals};
}

void EulerSum::add(double term) {
    ++terms_;
    if (wksp_.empty()) {
        wksp_.push_back(term);
        sum_ = 0.5 * term;
        last_update_ = std::fabs(sum_);
        return;
    }
    double tmp = wksp_[0];
    wksp_[0] = term;
    for (std::size_t j = 1; j < wksp_.size(); ++j) {
        const double hold = wksp_[j];
        wksp_[j] = 0.5 * (wksp_[j - 1] + tmp);
        tmp = hold;
    }
    const double next = 0.5 * (wksp_.back() + tmp);
    if (std::fabs(next) <= std::fabs(wksp_.back())) {
        wksp_.push_back(next);
        sum_ += 0.5 * next;
        last_update_ = std::fabs(0.5 * next);
    } else {
        sum_ += next;
        last_update_ = std::fabs(next);
    }
}

} // namespace covbridge::quad
