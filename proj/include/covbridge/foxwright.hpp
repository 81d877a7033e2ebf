#pragma once

#include <vector>

#include "covbridge/covmodels.hpp"

namespace covbridge {

/// One Gamma(offset + step*k) factor of a Fox-Wright series term.
struct GammaFactor {
    double offset;
    double step;
};

/// The series sum_k prod_j Gamma(a_j + A_j k) / prod_j Gamma(g_j + B_j k)
/// * z^k / k!, described by its upper/lower factor lists and argument.
struct FoxWrightSpec {
    std::vector<GammaFactor> upper;
    std::vector<GammaFactor> lower;
    double z;
};

struct SeriesResult {
    double value;
    int terms_used;
    /// Magnitude of the first omitted term times a safety factor of 2.
    double tail_bound;
    /// True when summation stopped on the tolerance criterion with
    /// tail_bound <= tol * max(1, |value|).
    bool converged;
};

/// Partial-sum evaluation of a Fox-Wright series.
///
/// Requires Delta = 1 + sum B_j - sum A_j > 0, or Delta = 0 with |z|
/// inside the radius prod |A_j|^{-A_j} prod |B_j|^{B_j}; other parameter
/// sets are rejected. Terms are computed in log space with sign
/// tracking. An upper (or lower) gamma argument landing within 1e-8 of a
/// non-positive integer raises pole_error naming the term index.
SeriesResult fox_wright(const FoxWrightSpec& spec, double tol, int max_terms);

/// Double-series expansion of the Generalized Cauchy isotropic spectral
/// density in dimension d: two alternating series in powers
/// (z gamma/2)^{(lambda+n)delta} and (z gamma/2)^{2n+d} with the
/// z^{-d} / (pi^{d/2} Gamma(lambda)) prefactor folded in.
///
/// Valid only when the two pole families stay separated:
/// (lambda+m)*delta away from every d+2n by at least the guard. A
/// collision raises pole_error (the representation degenerates and a
/// quadrature route must be used); the tolerance is absolute on the
/// returned value.
SeriesResult cauchy_sdf_series(const CauchyParams& p, int d, double z, double tol,
                               int max_terms = 300);

/// True when |(lambda+m)*delta - (d+2n)| < guard for some term indices
/// m, n below max_terms.
bool cauchy_series_pole_collision(const CauchyParams& p, int d, int max_terms = 300,
                                  double guard = 1e-6);

namespace detail {

/// cauchy_sdf_series plus the rounding floor accumulated from the
/// largest term magnitude, for callers that fold the series into a
/// route-level error estimate.
struct CauchySeriesDiag {
    SeriesResult result;
    double cancellation_floor;
};

CauchySeriesDiag cauchy_sdf_series_diag(const CauchyParams& p, int d, double z,
                                        double tol, int max_terms);

} // namespace detail

} // namespace covbridge
