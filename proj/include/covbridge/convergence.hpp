#pragma once

#include <string>
#include <vector>

#include "covbridge/covmodels.hpp"

namespace covbridge {

/// Strictly increasing evaluation abscissae, all > 0.
struct EvalGrid {
    std::vector<double> points;
    std::string description;

    EvalGrid(std::vector<double> pts, std::string desc = "");

    /// count+1 equispaced points on [min, max] with non-positive ones
    /// dropped, so uniform(0, 1, 10000) is the left-open grid
    /// {1e-4, 2e-4, ..., 1}.
    static EvalGrid uniform(double min, double max, int count,
                            std::string desc = "");

    /// count+1 geometrically spaced points on [min, max], min > 0.
    static EvalGrid logspace(double min, double max, int count,
                             std::string desc = "");
};

/// Grid of lambda x alpha maximum absolute errors between the
/// reparameterized Cauchy family (delta = 1, gamma = alpha*lambda) and
/// the exponential Matern nu = 1/2 model.
struct MAETable {
    std::vector<double> lambdas;
    std::vector<double> alphas;
    std::vector<std::vector<double>> cells; // cells[alpha index][lambda index]
    EvalGrid grid;
};

/// Pointwise |(1 + r/(alpha lambda))^{-lambda} - exp(-r/alpha)| over the
/// grid.
std::vector<double> abs_error_curve(double lambda, double alpha,
                                    const EvalGrid& grid);

/// Maximum of the absolute-error curve over the grid's span: the grid
/// argmax refined by golden-section search in the bracketing interval
/// (the error curve is unimodal in r).
double mae(double lambda, double alpha, const EvalGrid& grid);

MAETable mae_table(const std::vector<double>& lambdas,
                   const std::vector<double>& alphas, const EvalGrid& grid);

/// |spectral density of the reparameterized Cauchy - Matern nu=1/2
/// spectral density| over (lambda, z); rows follow lambdas, columns the
/// z grid. Requires d in {1, 2}, increasing lambdas, and delta in
/// (d/2, 2]; delta = 1, the limit target, is admitted for d = 2 as
/// well.
std::vector<std::vector<double>> spectral_limit_scan(
    double alpha, int d, const EvalGrid& z_grid, const std::vector<double>& lambdas,
    double delta, double tol = 1e-9);

/// Gamma(lambda - c) * lambda^c / Gamma(lambda), in log space; tends to
/// 1 as lambda grows. Requires lambda > c + 1.
double gamma_ratio_probe(double lambda, double c);

/// mae(lambda_i, alpha, grid) along an increasing lambda ladder; the
/// numerically observable witness of the uniform covariance
/// convergence.
std::vector<double> covariance_limit_scan(double alpha,
                                          const std::vector<double>& lambdas,
                                          const EvalGrid& grid);

} // namespace covbridge
