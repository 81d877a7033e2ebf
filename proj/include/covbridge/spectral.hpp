#pragma once

#include <complex>
#include <functional>

#include "covbridge/covmodels.hpp"

namespace covbridge {

enum class Route { closed_form, series, mellin_barnes, hankel };

const char* route_name(Route r);

/// One isotropic spectral-density evaluation: value, an absolute error
/// estimate, which route produced it, and how many integrand/term
/// evaluations it took.
struct SpectralResult {
    double value;
    double abs_err_estimate;
    Route route;
    long evaluations;
};

/// Vertical-line quadrature settings for the Mellin-Barnes route. The
/// contour is Re u = -epsilon with 0 < epsilon < min(1, lambda), which
/// separates the pole families of Gamma(-u) and Gamma(u+lambda);
/// epsilon*delta < d additionally keeps Gamma(d/2 + u delta/2) regular
/// on the line.
struct MBConfig {
    double epsilon;
    double t_max;
    double step;
};

/// epsilon halfway into the admissible interval, t_max grown until the
/// integrand magnitude falls below tol/100, and step sized from the
/// width of the pole-free strip around the contour (the trapezoid rule
/// converges geometrically in it).
MBConfig default_mb_config(const CauchyParams& p, int d, double z, double tol);

/// Matern isotropic spectral density in dimension d >= 1 (closed form).
SpectralResult matern_sdf(const MaternParams& p, int d, double z);

/// Integrand of the Mellin-Barnes representation at u = -epsilon + i t:
/// Gamma(-u) Gamma(u+lambda) Gamma(d/2 + u delta/2) / Gamma(-u delta/2)
/// * (2/(z gamma))^{u delta} / Gamma(lambda), all in log space. The
/// z^{-d}/pi^{d/2} prefactor and the 1/(2 pi) line element are applied
/// by the caller.
std::complex<double> mb_integrand(const CauchyParams& p, int d, double z,
                                  double epsilon, double t);

/// Generalized Cauchy spectral density by trapezoid quadrature of the
/// Mellin-Barnes contour integral over t in [-t_max, t_max]. The error
/// estimate combines step-halving, endpoint truncation (the integrand
/// decays like exp(-pi |t|)), and a rounding floor. The assembled
/// integral must be real up to the error estimate; a larger imaginary
/// part raises convergence_error, and the check costs nothing because
/// the full line is integrated rather than the conjugate-symmetric
/// half.
SpectralResult cauchy_sdf_mb(const CauchyParams& p, int d, double z,
                             const MBConfig& cfg, double endpoint_tol = 1e-8);

struct HankelDiag {
    /// lambda*delta <= d: the transform converges only conditionally
    /// through oscillation.
    bool conditionally_convergent = false;
    int segments = 0;
};

/// Isotropic spectral density of an arbitrary radial part phi in
/// d = 1, 2, 3 by oscillatory quadrature: the half-line is split at the
/// zeros of the Bessel kernel, each piece is integrated adaptively, and
/// the alternating piece sums are Euler-accelerated.
SpectralResult hankel_sdf(const std::function<double(double)>& phi, int d, double z,
                          double tol, HankelDiag* diag = nullptr);

SpectralResult cauchy_sdf_hankel(const CauchyParams& p, int d, double z, double tol,
                                 HankelDiag* diag = nullptr);

/// Route dispatcher: the double series when z*gamma/2 <= 1/2 and its
/// pole guard passes, otherwise Mellin-Barnes with an auto-scaled
/// contour, with Hankel quadrature as the fallback on any route
/// failure. Errors propagate only if every route fails.
SpectralResult cauchy_sdf(const CauchyParams& p, int d, double z, double tol = 1e-9);

} // namespace covbridge
