#include "covbridge/covmodels.hpp"

#include <cmath>

#include "covbridge/errors.hpp"
#include "covbridge/specfun.hpp"

namespace covbridge {

namespace {
constexpr double kLn2 = 0.69314718055994530942;

void require(bool ok, const char* what) {
    if (!ok)
        throw validation_error(what);
}
} // namespace

MaternParams::MaternParams(double nu_, double alpha_, double sigma2_)
    : nu(nu_), alpha(alpha_), sigma2(sigma2_) {
    require(std::isfinite(nu) && nu > 0.0, "MaternParams: nu must be > 0");
    require(std::isfinite(alpha) && alpha > 0.0, "MaternParams: alpha must be > 0");
    require(std::isfinite(sigma2) && sigma2 > 0.0, "MaternParams: sigma2 must be > 0");
}

CauchyParams::CauchyParams(double delta_, double lambda_, double gamma_, double sigma2_)
    : delta(delta_), lambda(lambda_), gamma(gamma_), sigma2(sigma2_) {
    require(std::isfinite(delta) && delta > 0.0 && delta <= 2.0,
            "CauchyParams: delta must be in (0, 2]");
    require(std::isfinite(lambda) && lambda > 0.0, "CauchyParams: lambda must be > 0");
    require(std::isfinite(gamma) && gamma > 0.0, "CauchyParams: gamma must be > 0");
    require(std::isfinite(sigma2) && sigma2 > 0.0, "CauchyParams: sigma2 must be > 0");
}

double matern_eval(const MaternParams& p, double r) {
    require(std::isfinite(r) && r >= 0.0, "matern_eval: r must be >= 0");
    const double x = r / p.alpha;
    if (x < 1e-10)
        return p.sigma2;
    bool underflowed = false;
    const double k = specfun::bessel_k(p.nu, x, &underflowed);
    if (k == 0.0)
        return 0.0;
    // Assembled in log space so large nu and extreme x do not overflow
    // the intermediate x^nu K_nu(x) product.
    const double log_m = (1.0 - p.nu) * kLn2 - specfun::lgamma_real(p.nu).log_abs +
                         p.nu * std::log(x) + std::log(k);
    return p.sigma2 * std::exp(log_m);
}

double cauchy_eval(const CauchyParams& p, double r) {
    require(std::isfinite(r) && r >= 0.0, "cauchy_eval: r must be >= 0");
    const double t = std::pow(r / p.gamma, p.delta);
    return p.sigma2 * std::exp(-p.lambda * std::log1p(t));
}

CauchyParams reparam_cauchy(double delta, double lambda, double alpha, double sigma2) {
    require(std::isfinite(alpha) && alpha > 0.0, "reparam_cauchy: alpha must be > 0");
    return CauchyParams(delta, lambda, alpha * lambda, sigma2);
}

} // namespace covbridge
