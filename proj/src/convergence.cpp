#include "covbridge/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covbridge/errors.hpp"
#include "covbridge/specfun.hpp"
#include "covbridge/spectral.hpp"

namespace covbridge {

namespace {

void check_lambda_alpha(double lambda, double alpha) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw validation_error("convergence: lambda must be > 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw validation_error("convergence: alpha must be > 0");
}

void check_increasing(const std::vector<double>& v, const char* who) {
    if (v.empty())
        throw validation_error(std::string(who) + ": empty list");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw validation_error(std::string(who) + ": values must be increasing");
}

// |C_{1,lambda,alpha lambda}(r) - M_{1/2,alpha}(r)| through the model
// evaluators.
double abs_error_at(const CauchyParams& c, const MaternParams& m, double r) {
    return std::fabs(cauchy_eval(c, r) - matern_eval(m, r));
}

} // namespace

EvalGrid::EvalGrid(std::vector<double> pts, std::string desc)
    : points(std::move(pts)), description(std::move(desc)) {
    if (points.empty())
        throw validation_error("EvalGrid: empty grid");
    double prev = 0.0;
    for (double p : points) {
        if (!std::isfinite(p) || !(p > prev))
            throw validation_error(
                "EvalGrid: points must be finite, strictly increasing and > 0");
        prev = p;
    }
}

EvalGrid EvalGrid::uniform(double min, double max, int count, std::string desc) {
    if (!(min < max) || count < 1)
        throw validation_error("EvalGrid::uniform: need min < max and count >= 1");
    std::vector<double> pts;
    pts.reserve(count + 1);
    const double h = (max - min) / count;
    for (int i = 0; i <= count; ++i) {
        const double p = (i == count) ? max : min + i * h;
        if (p > 0.0)
            pts.push_back(p);
    }
    if (desc.empty()) {
        std::ostringstream os;
        os << "uniform(" << min << ", " << max << ", " << count << ")";
        desc = os.str();
    }
    return EvalGrid(std::move(pts), std::move(desc));
}

EvalGrid EvalGrid::logspace(double min, double max, int count, std::string desc) {
    if (!(min > 0.0) || !(min < max) || count < 1)
        throw validation_error("EvalGrid::logspace: need 0 < min < max, count >= 1");
    std::vector<double> pts;
    pts.reserve(count + 1);
    const double lmin = std::log(min), lmax = std::log(max);
    for (int i = 0; i <= count; ++i) {
        pts.push_back(i == count ? max
                                 : std::exp(lmin + (lmax - lmin) * i / count));
    }
    if (desc.empty()) {
        std::ostringstream os;
        os << "logspace(" << min << ", " << max << ", " << count << ")";
        desc = os.str();
    }
    return EvalGrid(std::move(pts), std::move(desc));
}

std::vector<double> abs_error_curve(double lambda, double alpha,
                                    const EvalGrid& grid) {
    check_lambda_alpha(lambda, alpha);
    const CauchyParams c = reparam_cauchy(1.0, lambda, alpha);
    const MaternParams m(0.5, alpha);
    std::vector<double> out;
    out.reserve(grid.points.size());
    for (double r : grid.points)
        out.push_back(abs_error_at(c, m, r));
    return out;
}

double mae(double lambda, double alpha, const EvalGrid& grid) {
    check_lambda_alpha(lambda, alpha);
    const CauchyParams c = reparam_cauchy(1.0, lambda, alpha);
    const MaternParams m(0.5, alpha);

    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const double e = abs_error_at(c, m, grid.points[i]);
        if (e > best) {
            best = e;
            imax = i;
        }
    }

    // The error curve is unimodal in r: golden-section refinement on the
    // bracketing interval recovers the supremum over the grid's span.
    const std::size_t n = grid.points.size();
    double lo = grid.points[imax == 0 ? 0 : imax - 1];
    double hi = grid.points[std::min(imax + 1, n - 1)];
    constexpr double kInvPhi = 0.61803398874989484820;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = abs_error_at(c, m, x1);
    double f2 = abs_error_at(c, m, x2);
    for (int it = 0; it < 90 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = abs_error_at(c, m, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = abs_error_at(c, m, x1);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

MAETable mae_table(const std::vector<double>& lambdas,
                   const std::vector<double>& alphas, const EvalGrid& grid) {
    if (lambdas.empty() || alphas.empty())
        throw validation_error("mae_table: empty parameter list");
    MAETable table{lambdas, alphas, {}, grid};
    table.cells.reserve(alphas.size());
    for (double a : alphas) {
        std::vector<double> row;
        row.reserve(lambdas.size());
        for (double l : lambdas)
            row.push_back(mae(l, a, grid));
        table.cells.push_back(std::move(row));
    }
    return table;
}

std::vector<std::vector<double>> spectral_limit_scan(
    double alpha, int d, const EvalGrid& z_grid, const std::vector<double>& lambdas,
    double delta, double tol) {
    if (d != 1 && d != 2)
        throw validation_error("spectral_limit_scan: d must be 1 or 2");
    // the limit target delta = 1 itself is admitted even where it sits
    // on the boundary of (d/2, 2]
    if (!(delta <= 2.0) || !(delta > 0.5 * d || delta == 1.0))
        throw validation_error(
            "spectral_limit_scan: delta must be in (d/2, 2] or exactly 1");
    check_increasing(lambdas, "spectral_limit_scan");
    if (!(alpha > 0.0))
        throw validation_error("spectral_limit_scan: alpha must be > 0");

    const MaternParams m(0.5, alpha);
    std::vector<std::vector<double>> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) {
        const CauchyParams c = reparam_cauchy(delta, l, alpha);
        std::vector<double> row;
        row.reserve(z_grid.points.size());
        for (double z : z_grid.points)
            row.push_back(
                std::fabs(cauchy_sdf(c, d, z, tol).value - matern_sdf(m, d, z).value));
        out.push_back(std::move(row));
    }
    return out;
}

double gamma_ratio_probe(double lambda, double c) {
    if (!std::isfinite(lambda) || !std::isfinite(c))
        throw validation_error("gamma_ratio_probe: non-finite argument");
    if (!(lambda > c + 1.0))
        throw validation_error("gamma_ratio_probe: need lambda > c + 1");
    return std::exp(specfun::lgamma_real(lambda - c).log_abs + c * std::log(lambda) -
                    specfun::lgamma_real(lambda).log_abs);
}

std::vector<double> covariance_limit_scan(double alpha,
                                          const std::vector<double>& lambdas,
                                          const EvalGrid& grid) {
    check_increasing(lambdas, "covariance_limit_scan");
    std::vector<double> out;
    out.reserve(lambdas.size());
    for (double l : lambdas)
        out.push_back(mae(l, alpha, grid));
    return out;
}

} // namespace covbridge
