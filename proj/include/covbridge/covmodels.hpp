#pragma once

namespace covbridge {

/// Matern correlation parameters: smoothness nu > 0, scale alpha > 0,
/// variance sigma2 > 0 (default 1 so the model is a correlation).
struct MaternParams {
    double nu;
    double alpha;
    double sigma2;

    MaternParams(double nu, double alpha, double sigma2 = 1.0);
};

/// Generalized Cauchy parameters: shape delta in (0, 2], tail exponent
/// lambda > 0, scale gamma > 0, variance sigma2 > 0.
struct CauchyParams {
    double delta;
    double lambda;
    double gamma;
    double sigma2;

    CauchyParams(double delta, double lambda, double gamma, double sigma2 = 1.0);
};

/// sigma2 * 2^{1-nu}/Gamma(nu) (r/alpha)^nu K_nu(r/alpha).
/// Continuous at the origin: r/alpha < 1e-10 evaluates to the analytic
/// limit sigma2 rather than going through the divergent K_nu.
double matern_eval(const MaternParams& p, double r);

/// sigma2 * (1 + (r/gamma)^delta)^{-lambda}.
double cauchy_eval(const CauchyParams& p, double r);

/// The scale-coupled family with gamma = alpha * lambda, whose large
/// lambda behaviour at delta = 1 approaches exp(-r/alpha).
CauchyParams reparam_cauchy(double delta, double lambda, double alpha,
                            double sigma2 = 1.0);

} // namespace covbridge
