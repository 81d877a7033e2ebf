#include "covbridge/foxwright.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "covbridge/errors.hpp"
#include "covbridge/specfun.hpp"

namespace covbridge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTermPoleGuard = 1e-8;

// Terms are evaluated in extended precision: the two series the module
// sums are alternating, and the roundoff of individual terms gets
// amplified by the cancellation. 80-bit log-gamma keeps the term noise
// three orders of magnitude below double rounding.
struct XLogGamma {
    long double log_abs;
    int sign;
};

XLogGamma lgammal_signed(long double x) {
    int sign = 0;
    const long double v = ::lgammal_r(x, &sign);
    return {v, sign};
}

// Distance from x to the nearest non-positive integer (gamma pole).
double pole_distance(double x) {
    if (x >= 0.0)
        return x;
    return std::fabs(x - std::round(x));
}

[[noreturn]] void throw_term_pole(const char* where, double arg, long k) {
    std::ostringstream os;
    os << where << ": gamma argument " << arg << " hits a pole at term k=" << k;
    throw pole_error(os.str());
}

struct CollisionIndex {
    int m;
    long n;
};

// Searches |(lambda+m)*delta - (d+2n)| < guard with both series indices
// scanned up to max_terms and the conjugate index unbounded.
bool find_pole_collision(const CauchyParams& p, int d, int max_terms, double guard,
                         CollisionIndex* hit) {
    for (int m = 0; m < max_terms; ++m) {
        const double x = (p.lambda + m) * p.delta - d;
        if (x < -guard)
            continue;
        const double n = std::round(0.5 * x);
        if (n >= 0.0 && std::fabs(x - 2.0 * n) < guard) {
            if (hit)
                *hit = {m, static_cast<long>(n)};
            return true;
        }
    }
    for (int n = 0; n < max_terms; ++n) {
        const double m = std::round((2.0 * n + d) / p.delta - p.lambda);
        if (m < 0.0)
            continue;
        if (std::fabs((p.lambda + m) * p.delta - (2.0 * n + d)) < guard) {
            if (hit)
                *hit = {static_cast<int>(m), n};
            return true;
        }
    }
    return false;
}

} // namespace

SeriesResult fox_wright(const FoxWrightSpec& spec, double tol, int max_terms) {
    if (!(tol > 0.0))
        throw validation_error("fox_wright: tolerance must be > 0");
    if (max_terms < 1)
        throw validation_error("fox_wright: max_terms must be >= 1");
    if (!std::isfinite(spec.z))
        throw validation_error("fox_wright: non-finite argument");
    for (const auto& f : spec.upper)
        if (!std::isfinite(f.offset) || !std::isfinite(f.step))
            throw validation_error("fox_wright: non-finite upper factor");
    for (const auto& f : spec.lower)
        if (!std::isfinite(f.offset) || !std::isfinite(f.step))
            throw validation_error("fox_wright: non-finite lower factor");

    double sum_a = 0.0, sum_b = 0.0;
    for (const auto& f : spec.upper)
        sum_a += f.step;
    for (const auto& f : spec.lower)
        sum_b += f.step;
    const double delta_conv = 1.0 + sum_b - sum_a;
    if (delta_conv < -1e-12)
        throw validation_error("fox_wright: divergent parameter set (Delta < 0)");
    if (std::fabs(delta_conv) <= 1e-12) {
        double log_rho = 0.0;
        for (const auto& f : spec.upper)
            if (f.step != 0.0)
                log_rho -= f.step * std::log(std::fabs(f.step));
        for (const auto& f : spec.lower)
            if (f.step != 0.0)
                log_rho += f.step * std::log(std::fabs(f.step));
        if (spec.z != 0.0 && !(std::log(std::fabs(spec.z)) < log_rho))
            throw validation_error("fox_wright: |z| outside convergence radius at Delta = 0");
    }

    const long double log_abs_z =
        spec.z == 0.0 ? 0.0L : std::log(std::fabs(static_cast<long double>(spec.z)));

    auto term_at = [&](long k) -> long double {
        if (k > 0 && spec.z == 0.0)
            return 0.0L;
        long double log_t = -lgammal_signed(static_cast<long double>(k) + 1.0L).log_abs;
        int sign = 1;
        for (const auto& f : spec.upper) {
            const long double arg =
                static_cast<long double>(f.offset) +
                static_cast<long double>(f.step) * static_cast<long double>(k);
            if (pole_distance(static_cast<double>(arg)) < kTermPoleGuard)
                throw_term_pole("fox_wright (upper)", static_cast<double>(arg), k);
            const auto lg = lgammal_signed(arg);
            log_t += lg.log_abs;
            sign *= lg.sign;
        }
        for (const auto& f : spec.lower) {
            const long double arg =
                static_cast<long double>(f.offset) +
                static_cast<long double>(f.step) * static_cast<long double>(k);
            if (pole_distance(static_cast<double>(arg)) < kTermPoleGuard)
                throw_term_pole("fox_wright (lower)", static_cast<double>(arg), k);
            const auto lg = lgammal_signed(arg);
            log_t -= lg.log_abs;
            sign *= lg.sign;
        }
        if (k > 0) {
            log_t += static_cast<long double>(k) * log_abs_z;
            if (spec.z < 0.0 && (k & 1))
                sign = -sign;
        }
        return sign * std::exp(log_t);
    };

    auto omitted_magnitude = [&](long k) -> double {
        try {
            return static_cast<double>(std::fabs(term_at(k)));
        } catch (const pole_error&) {
            return kInf;
        }
    };

    long double partial = 0.0L;
    int streak = 0;
    for (int k = 0; k < max_terms; ++k) {
        const long double t = term_at(k);
        partial += t;
        const double abs_partial = static_cast<double>(std::fabs(partial));
        const double thresh = 0.5 * tol * std::max(1.0, abs_partial);
        if (std::fabs(t) <= thresh)
            ++streak;
        else
            streak = 0;
        if (streak >= 2) {
            const double tail = 2.0 * omitted_magnitude(k + 1);
            if (tail <= tol * std::max(1.0, abs_partial))
                return {static_cast<double>(partial), k + 1, tail, true};
        }
    }
    return {static_cast<double>(partial), max_terms, 2.0 * omitted_magnitude(max_terms),
            false};
}

bool cauchy_series_pole_collision(const CauchyParams& p, int d, int max_terms,
                                  double guard) {
    if (d < 1 || d > 3)
        throw validation_error("cauchy_series_pole_collision: d must be 1, 2, or 3");
    if (max_terms < 1 || !(guard > 0.0))
        throw validation_error("cauchy_series_pole_collision: bad guard settings");
    return find_pole_collision(p, d, max_terms, guard, nullptr);
}

namespace detail {

CauchySeriesDiag cauchy_sdf_series_diag(const CauchyParams& p, int d, double z,
                                        double tol, int max_terms) {
    if (d < 1 || d > 3)
        throw validation_error("cauchy_sdf_series: d must be 1, 2, or 3");
    if (!(z > 0.0) || !std::isfinite(z))
        throw validation_error("cauchy_sdf_series: z must be > 0");
    if (!(tol > 0.0))
        throw validation_error("cauchy_sdf_series: tolerance must be > 0");
    if (max_terms < 1)
        throw validation_error("cauchy_sdf_series: max_terms must be >= 1");

    CollisionIndex hit{};
    if (find_pole_collision(p, d, max_terms, 1e-6, &hit)) {
        std::ostringstream os;
        os << "cauchy_sdf_series: pole collision (lambda+" << hit.m << ")*delta ~ d+2*"
           << hit.n << " for delta=" << p.delta << " lambda=" << p.lambda << " d=" << d;
        throw pole_error(os.str());
    }

    const long double ld = d;
    const long double delta = p.delta;
    const long double lambda = p.lambda;
    const long double log_half_zg =
        std::log(0.5L * static_cast<long double>(z) * static_cast<long double>(p.gamma));
    const long double log_pref =
        std::log(static_cast<long double>(p.sigma2)) -
        ld * std::log(static_cast<long double>(z)) -
        0.5L * ld * std::log(static_cast<long double>(M_PIl)) -
        lgammal_signed(lambda).log_abs;
    const long double log_two_over_delta = std::log(2.0L / delta);

    // Series in powers (z gamma/2)^{(lambda+n) delta}.
    auto term1 = [&](int n) -> long double {
        const long double ln = lambda + n;
        const auto g_num = lgammal_signed(0.5L * (ld - ln * delta));
        const auto g_lam = lgammal_signed(ln);
        const auto g_den = lgammal_signed(0.5L * ln * delta);
        const long double log_t = log_pref + g_lam.log_abs + g_num.log_abs -
                                  g_den.log_abs + ln * delta * log_half_zg -
                                  lgammal_signed(n + 1.0L).log_abs;
        const int sign = g_lam.sign * g_num.sign * g_den.sign * ((n & 1) ? -1 : 1);
        return sign * std::exp(log_t);
    };
    // Series in powers (z gamma/2)^{2n+d}.
    auto term2 = [&](int n) -> long double {
        const long double q = (2.0L * n + ld) / delta;
        const auto g1 = lgammal_signed(q);
        const auto g2 = lgammal_signed(lambda - q);
        const auto g3 = lgammal_signed(n + 0.5L * ld);
        const long double log_t = log_pref + log_two_over_delta + g1.log_abs +
                                  g2.log_abs - g3.log_abs +
                                  (2.0L * n + ld) * log_half_zg -
                                  lgammal_signed(n + 1.0L).log_abs;
        const int sign = g1.sign * g2.sign * g3.sign * ((n & 1) ? -1 : 1);
        return sign * std::exp(log_t);
    };

    auto omitted = [&](auto& f, int n) -> double {
        return static_cast<double>(std::fabs(f(n)));
    };

    long double sum = 0.0L;
    double max_abs_term = 0.0;
    int terms = 0;
    int streak = 0;
    bool converged = false;
    double tail = kInf;
    for (int n = 0; n < max_terms; ++n) {
        const long double t1 = term1(n);
        const long double t2 = term2(n);
        sum += t1;
        sum += t2;
        max_abs_term = std::max({max_abs_term, static_cast<double>(std::fabs(t1)),
                                 static_cast<double>(std::fabs(t2))});
        terms = n + 1;
        if (std::max(std::fabs(t1), std::fabs(t2)) <= 0.5L * tol)
            ++streak;
        else
            streak = 0;
        if (streak >= 2) {
            tail = 2.0 * (omitted(term1, n + 1) + omitted(term2, n + 1));
            if (tail <= tol) {
                converged = true;
                break;
            }
        }
    }
    if (!converged)
        tail = 2.0 * (omitted(term1, terms) + omitted(term2, terms));

    // Extended-precision terms push the roundoff floor well below
    // double epsilon on the max term.
    const double cancellation =
        max_abs_term * terms * 1e-18;
    return {{static_cast<double>(sum), terms, tail, converged}, cancellation};
}

} // namespace detail

SeriesResult cauchy_sdf_series(const CauchyParams& p, int d, double z, double tol,
                               int max_terms) {
    return detail::cauchy_sdf_series_diag(p, d, z, tol, max_terms).result;
}

} // namespace covbridge
