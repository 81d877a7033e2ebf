#include "covbridge/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "covbridge/errors.hpp"
#include "covbridge/foxwright.hpp"
#include "covbridge/quadrature.hpp"
#include "covbridge/specfun.hpp"

namespace covbridge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_dim(int d, const char* who) {
    if (d < 1 || d > 3) {
        std::ostringstream os;
        os << who << ": d must be 1, 2, or 3 (got " << d << ")";
        throw validation_error(os.str());
    }
}

void check_z_positive(double z, const char* who) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw validation_error(std::string(who) + ": z must be > 0 and finite");
}

} // namespace

const char* route_name(Route r) {
    switch (r) {
    case Route::closed_form:
        return "closed_form";
    case Route::series:
        return "series";
    case Route::mellin_barnes:
        return "mellin_barnes";
    case Route::hankel:
        return "hankel";
    }
    return "unknown";
}

SpectralResult matern_sdf(const MaternParams& p, int d, double z) {
    if (d < 1)
        throw validation_error("matern_sdf: d must be >= 1");
    if (!(z >= 0.0) || !std::isfinite(z))
        throw validation_error("matern_sdf: z must be >= 0 and finite");
    const double az = p.alpha * z;
    const double log_v = specfun::lgamma_real(p.nu + 0.5 * d).log_abs -
                         0.5 * d * std::log(M_PI) -
                         specfun::lgamma_real(p.nu).log_abs + d * std::log(p.alpha) -
                         (p.nu + 0.5 * d) * std::log1p(az * az);
    const double v = p.sigma2 * std::exp(log_v);
    return {v, 4.0 * kEps * v, Route::closed_form, 1};
}

std::complex<double> mb_integrand(const CauchyParams& p, int d, double z,
                                  double epsilon, double t) {
    const std::complex<double> u(-epsilon, t);
    const double log_w = std::log(2.0 / (z * p.gamma));
    const std::complex<double> e =
        specfun::lgamma_complex(-u) + specfun::lgamma_complex(u + p.lambda) +
        specfun::lgamma_complex(0.5 * d + 0.5 * p.delta * u) -
        specfun::lgamma_complex(-0.5 * p.delta * u) -
        specfun::lgamma_real(p.lambda).log_abs + u * (p.delta * log_w);
    return std::exp(e);
}

MBConfig default_mb_config(const CauchyParams& p, int d, double z, double tol) {
    check_dim(d, "default_mb_config");
    check_z_positive(z, "default_mb_config");
    if (!(tol > 0.0))
        throw validation_error("default_mb_config: tolerance must be > 0");

    const double eps = std::min(0.25, 0.5 * p.lambda);
    // Width of the pole-free strip around the contour; with the epsilon
    // above it always equals eps, but keep the full expression.
    const double strip = std::min({eps, p.lambda - eps, d / p.delta - eps});
    const double step = std::min(0.1, M_PI * strip / std::max(5.0, std::log(100.0 / tol)));

    const double pref =
        p.sigma2 * std::exp(-d * std::log(z) - 0.5 * d * std::log(M_PI)) / (2.0 * M_PI);
    double t_max = 6.0;
    while (t_max < 400.0 &&
           pref * std::abs(mb_integrand(p, d, z, eps, t_max)) > 0.01 * tol)
        t_max += 2.0;
    return {eps, t_max, step};
}

SpectralResult cauchy_sdf_mb(const CauchyParams& p, int d, double z,
                             const MBConfig& cfg, double endpoint_tol) {
    check_dim(d, "cauchy_sdf_mb");
    check_z_positive(z, "cauchy_sdf_mb");
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < std::min(1.0, p.lambda)))
        throw validation_error(
            "cauchy_sdf_mb: contour offset must satisfy 0 < epsilon < min(1, lambda)");
    if (!(cfg.epsilon * p.delta < d))
        throw validation_error(
            "cauchy_sdf_mb: contour hits a pole of Gamma(d/2 + u delta/2); need "
            "epsilon*delta < d");
    if (!(cfg.t_max > 0.0) || !(cfg.step > 0.0) || cfg.step > cfg.t_max)
        throw validation_error("cauchy_sdf_mb: need 0 < step <= t_max");

    const long n_half = static_cast<long>(std::ceil(cfg.t_max / cfg.step));
    const long n = 2 * std::min<long>(n_half, 2000000);
    const double h = 2.0 * cfg.t_max / static_cast<double>(n);

    std::complex<double> fine_sum(0.0, 0.0);
    std::complex<double> coarse_sum(0.0, 0.0);
    double abs_sum = 0.0;
    double mag_first = 0.0, mag_last = 0.0;
    for (long j = 0; j <= n; ++j) {
        const double t = -cfg.t_max + h * static_cast<double>(j);
        const std::complex<double> g = mb_integrand(p, d, z, cfg.epsilon, t);
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        fine_sum += w * g;
        abs_sum += std::abs(g);
        if (j % 2 == 0) {
            const double wc = (j == 0 || j == n) ? 0.5 : 1.0;
            coarse_sum += wc * g;
        }
        if (j == 0)
            mag_first = std::abs(g);
        if (j == n)
            mag_last = std::abs(g);
    }

    const double pref =
        p.sigma2 * std::exp(-d * std::log(z) - 0.5 * d * std::log(M_PI)) / (2.0 * M_PI);
    const std::complex<double> integral = pref * h * fine_sum;
    const std::complex<double> integral_coarse = pref * (2.0 * h) * coarse_sum;

    // The integrand decays like exp(-pi |t|); the omitted tails are
    // bounded by the endpoint magnitudes over that rate.
    const double trunc = pref * (mag_first + mag_last) / M_PI;
    if (pref * std::max(mag_first, mag_last) > endpoint_tol) {
        std::ostringstream os;
        os << "cauchy_sdf_mb: truncation insufficient at t_max=" << cfg.t_max
           << " (endpoint magnitude " << pref * std::max(mag_first, mag_last) << ")";
        throw convergence_error(os.str());
    }

    const double disc = std::abs(integral - integral_coarse);
    const double round_floor = 8.0 * kEps * pref * h * abs_sum;
    const double abs_err = disc + trunc + round_floor;

    // Conjugate symmetry of the integrand makes the assembled integral
    // real; a significant imaginary part means a bug or a bad contour.
    if (std::fabs(integral.imag()) > 10.0 * abs_err) {
        std::ostringstream os;
        os << "cauchy_sdf_mb: symmetry violation, Im=" << integral.imag()
           << " exceeds 10x error estimate " << abs_err;
        throw convergence_error(os.str());
    }

    return {integral.real(), abs_err, Route::mellin_barnes, n + 1};
}

SpectralResult hankel_sdf(const std::function<double(double)>& phi, int d, double z,
                          double tol, HankelDiag* diag) {
    check_dim(d, "hankel_sdf");
    check_z_positive(z, "hankel_sdf");
    if (!(tol > 0.0))
        throw validation_error("hankel_sdf: tolerance must be > 0");
    if (!phi)
        throw validation_error("hankel_sdf: missing radial part");

    double pref = 0.0;
    std::function<double(double)> weight;
    std::function<double(int)> zero_at;
    switch (d) {
    case 1:
        pref = 1.0 / M_PI;
        weight = [z](double u) { return std::cos(u * z); };
        zero_at = [z](int k) { return (k - 0.5) * M_PI / z; };
        break;
    case 2:
        pref = 1.0 / (2.0 * M_PI);
        weight = [z](double u) { return u * specfun::bessel_j(0.0, u * z); };
        zero_at = [z](int k) { return specfun::bessel_j0_zero(k) / z; };
        break;
    case 3:
        pref = 1.0 / (2.0 * M_PI * M_PI * z);
        weight = [z](double u) { return u * std::sin(u * z); };
        zero_at = [z](int k) { return k * M_PI / z; };
        break;
    }

    auto integrand = [&](double u) { return weight(u) * phi(u); };
    const double seg_tol = tol / (64.0 * pref);

    quad::EulerSum acc;
    long evals = 0;
    double seg_err = 0.0;
    double abs_seg_sum = 0.0;
    double b_prev = 0.0;
    const int kMaxSegments = 400;
    int segments = 0;
    int stable = 0;
    bool settled = false;
    for (int k = 1; k <= kMaxSegments; ++k) {
        const double b = zero_at(k);
        const auto piece = quad::adaptive_simpson(integrand, b_prev, b, seg_tol);
        evals += piece.evaluations;
        seg_err += piece.abs_err;
        abs_seg_sum += std::fabs(piece.value);
        acc.add(piece.value);
        b_prev = b;
        segments = k;
        if (k >= 6) {
            if (pref * acc.residual() <= 0.25 * tol) {
                if (++stable >= 2) {
                    settled = true;
                    break;
                }
            } else {
                stable = 0;
            }
        }
    }
    if (!settled)
        throw convergence_error(
            "hankel_sdf: alternating-segment acceleration did not stabilize");

    if (diag) {
        diag->segments = segments;
        diag->conditionally_convergent = false;
    }
    const double value = pref * acc.value();
    const double abs_err =
        pref * (2.0 * acc.residual() + seg_err) + 16.0 * kEps * pref * abs_seg_sum;
    return {value, abs_err, Route::hankel, evals};
}

SpectralResult cauchy_sdf_hankel(const CauchyParams& p, int d, double z, double tol,
                                 HankelDiag* diag) {
    HankelDiag local;
    HankelDiag* out = diag ? diag : &local;
    const auto res =
        hankel_sdf([&p](double u) { return cauchy_eval(p, u); }, d, z, tol, out);
    out->conditionally_convergent = (p.lambda * p.delta <= d);
    return res;
}

SpectralResult cauchy_sdf(const CauchyParams& p, int d, double z, double tol) {
    check_dim(d, "cauchy_sdf");
    check_z_positive(z, "cauchy_sdf");
    if (!(tol > 0.0))
        throw validation_error("cauchy_sdf: tolerance must be > 0");

    constexpr int kSeriesMaxTerms = 300;
    if (0.5 * z * p.gamma <= 0.5 &&
        !cauchy_series_pole_collision(p, d, kSeriesMaxTerms)) {
        const auto diag = detail::cauchy_sdf_series_diag(p, d, z, tol, kSeriesMaxTerms);
        if (diag.result.converged)
            return {diag.result.value,
                    diag.result.tail_bound + diag.cancellation_floor, Route::series,
                    diag.result.terms_used};
    }
    try {
        return cauchy_sdf_mb(p, d, z, default_mb_config(p, d, z, tol), tol);
    } catch (const std::exception&) {
        return cauchy_sdf_hankel(p, d, z, tol);
    }
}

} // namespace covbridge
