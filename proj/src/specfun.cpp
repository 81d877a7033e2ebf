#include "covbridge/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include "covbridge/errors.hpp"

namespace covbridge::specfun {

namespace {

// GSL must not abort the process; statuses are checked per call.
const gsl_error_handler_t* const g_old_handler = gsl_set_error_handler_off();

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

[[noreturn]] void throw_pole(double x) {
    std::ostringstream os;
    os << "gamma pole at " << x;
    throw pole_error(os.str());
}

// B_{2n} / (2n (2n-1)), n = 1..8. With the shift threshold below, the
// truncation error of the Stirling series stays under ~1e-18.
constexpr double kStirlingCoeff[] = {
    1.0 / 12.0,     -1.0 / 360.0,        1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,   -691.0 / 360360.0,   1.0 / 156.0,  -3617.0 / 122400.0,
};
constexpr double kStirlingShift = 12.0;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

} // namespace

SignedLogGamma lgamma_real(double x) {
    if (!std::isfinite(x))
        throw validation_error("lgamma_real: non-finite argument");
    if (is_nonpositive_integer(x))
        throw_pole(x);
    int sign = 0;
    const long double v = ::lgammal_r(static_cast<long double>(x), &sign);
    return {static_cast<double>(v), sign};
}

std::complex<double> lgamma_complex(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw validation_error("lgamma_complex: non-finite argument");
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
        throw_pole(z.real());

    std::complex<double> shift(0.0, 0.0);
    while (z.real() < kStirlingShift) {
        shift += std::log(z);
        z += 1.0;
    }

    const std::complex<double> lz = std::log(z);
    std::complex<double> result = (z - 0.5) * lz - z + kHalfLog2Pi;

    const std::complex<double> inv2 = 1.0 / (z * z);
    std::complex<double> invp = 1.0 / z; // z^{-(2n-1)}
    for (double c : kStirlingCoeff) {
        result += c * invp;
        invp *= inv2;
    }
    return result - shift;
}

double bessel_k(double nu, double x, bool* underflowed) {
    if (underflowed)
        *underflowed = false;
    if (!std::isfinite(nu) || nu < 0.0)
        throw validation_error("bessel_k: order must be finite and >= 0");
    if (!(x > 0.0))
        throw validation_error("bessel_k: argument must be > 0");

    gsl_sf_result r;
    const int status = gsl_sf_bessel_Knu_scaled_e(nu, x, &r);
    if (status == GSL_EUNDRFLW) {
        if (underflowed)
            *underflowed = true;
        return 0.0;
    }
    if (status != GSL_SUCCESS) {
        std::ostringstream os;
        os << "bessel_k(" << nu << ", " << x << "): " << gsl_strerror(status);
        throw convergence_error(os.str());
    }
    // Unscale e^x K_nu(x); the product underflows near x ~ 745.
    const double v = r.val * std::exp(-x);
    if (v == 0.0 && r.val > 0.0 && underflowed)
        *underflowed = true;
    return v;
}

double bessel_j(double nu, double x) {
    if (!(x >= 0.0))
        throw validation_error("bessel_j: argument must be >= 0");
    if (nu == 0.0) {
        gsl_sf_result r;
        const int status = gsl_sf_bessel_J0_e(x, &r);
        if (status != GSL_SUCCESS)
            throw convergence_error(std::string("bessel_j0: ") + gsl_strerror(status));
        return r.val;
    }
    if (nu == 0.5) {
        if (x == 0.0)
            return 0.0;
        return std::sqrt(2.0 / (M_PI * x)) * std::sin(x);
    }
    if (nu == -0.5) {
        if (x == 0.0)
            throw validation_error("bessel_j: order -1/2 needs x > 0");
        return std::sqrt(2.0 / (M_PI * x)) * std::cos(x);
    }
    throw validation_error("bessel_j: unsupported order (only -1/2, 0, +1/2)");
}

double bessel_j0_zero(unsigned k) {
    if (k == 0)
        throw validation_error("bessel_j0_zero: k must be >= 1");
    gsl_sf_result r;
    const int status = gsl_sf_bessel_zero_J0_e(k, &r);
    if (status != GSL_SUCCESS)
        throw convergence_error(std::string("bessel_j0_zero: ") + gsl_strerror(status));
    return r.val;
}

double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw validation_error("beta: arguments must be > 0");
    return std::exp(lgamma_real(a).log_abs + lgamma_real(b).log_abs -
                    lgamma_real(a + b).log_abs);
}

} // namespace covbridge::specfun
