#pragma once

#include <complex>

namespace covbridge::specfun {

/// log|Gamma(x)| together with the sign of Gamma(x).
struct SignedLogGamma {
    double log_abs;
    int sign; // +1 or -1
};

/// Real log-gamma with explicit sign. Throws pole_error at
/// x in {0, -1, -2, ...}.
SignedLogGamma lgamma_real(double x);

/// Principal branch of log Gamma(z).
///
/// Computed by recurrence shifts into Re z >= 12 followed by the
/// Stirling series; along the shift path Im z is constant, so the
/// principal logs never cross the branch cut. Stable for the large
/// imaginary parts that vertical-line contour quadrature produces.
/// Throws pole_error at non-positive real integers and
/// validation_error on non-finite input.
std::complex<double> lgamma_complex(std::complex<double> z);

/// Modified Bessel function of the second kind K_nu(x), nu >= 0, x > 0.
/// For large x the value underflows to an exact 0; *underflowed (when
/// given) reports that instead of an error, since spectral tails
/// legitimately reach that regime.
double bessel_k(double nu, double x, bool* underflowed = nullptr);

/// Bessel J_nu(x) for the orders appearing in radial Fourier kernels in
/// d = 1, 2, 3: nu in {-1/2, 0, +1/2}. Half-integer orders use their
/// exact trigonometric forms; other orders are rejected.
double bessel_j(double nu, double x);

/// k-th positive zero of J_0, k >= 1.
double bessel_j0_zero(unsigned k);

/// Euler beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b) for
/// a, b > 0, evaluated in log space.
double beta(double a, double b);

} // namespace covbridge::specfun
