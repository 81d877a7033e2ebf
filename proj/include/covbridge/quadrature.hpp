#pragma once

#include <functional>
#include <vector>

namespace covbridge::quad {

struct IntegralResult {
    double value;
    double abs_err;
    long evaluations;
};

/// Recursive adaptive Simpson with Richardson correction and an
/// absolute-tolerance split rule. Throws convergence_error when the
/// evaluation budget runs out before the tolerance is met.
IntegralResult adaptive_simpson(const std::function<double(double)>& f, double a,
                                double b, double abs_tol, int max_depth = 48,
                                long max_evals = 4000000);

/// Euler transformation of an alternating series, fed one term at a
/// time. The workspace deepens only while the transformed column keeps
/// shrinking, which is the classic van Wijngaarden variant.
class EulerSum {
public:
    void add(double term);

    double value() const { return sum_; }
    /// Magnitude of the last update to value(); the stabilization
    /// residual used as the convergence criterion.
    double residual() const { return last_update_; }
    int terms() const { return terms_; }

private:
    std::vector<double> wksp_;
    double sum_ = 0.0;
    double last_update_ = 0.0;
    int terms_ = 0;
};

} // namespace covbridge::quad
