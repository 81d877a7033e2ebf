#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covbridge/errors.hpp"
#include "covbridge/foxwright.hpp"
#include "covbridge/specfun.hpp"
#include "covbridge/spectral.hpp"

#include "test_util.hpp"

using namespace covbridge;
using testutil::rel_err;

TEST_CASE("fox_wright basic values") {
    // only the k = 0 term survives at z = 0
    const auto r0 = fox_wright({{{1.0, 1.0}}, {}, 0.0}, 1e-12, 50);
    CHECK(r0.value == 1.0);
    CHECK(r0.converged);

    // upper (1,1) against lower (1,1) cancels: terms are z^k/k!
    const auto re = fox_wright({{{1.0, 1.0}}, {{1.0, 1.0}}, 1.0}, 1e-12, 200);
    CHECK(re.converged);
    CHECK(std::fabs(re.value - std::exp(1.0)) <= 1e-11);

    // no gamma factors at all: plain exponential series
    const auto re2 = fox_wright({{}, {}, 2.5}, 1e-13, 200);
    CHECK(rel_err(re2.value, std::exp(2.5)) <= 1e-12);
}

TEST_CASE("fox_wright convergence condition") {
    // Delta = 1 - 2 < 0: rejected
    CHECK_THROWS_AS(fox_wright({{{1.0, 2.0}}, {}, 0.5}, 1e-10, 100), validation_error);
    // Delta = 0 (upper (1,1)): geometric series with radius 1
    const auto geo = fox_wright({{{1.0, 1.0}}, {}, 0.5}, 1e-12, 400);
    CHECK(rel_err(geo.value, 2.0) <= 1e-11);
    CHECK_THROWS_AS(fox_wright({{{1.0, 1.0}}, {}, 1.5}, 1e-10, 100), validation_error);
}

TEST_CASE("fox_wright pole reporting") {
    // upper gamma argument hits -3 at k = 0
    CHECK_THROWS_AS(fox_wright({{{-3.0, 1.0}}, {}, 0.5}, 1e-10, 100), pole_error);
    // lower argument marches onto a pole: 2 - k hits 0 at k = 2
    CHECK_THROWS_AS(fox_wright({{}, {{2.0, -1.0}}, 0.5}, 1e-10, 100), pole_error);
    // negative non-integer offsets are fine
    CHECK_NOTHROW(fox_wright({{{-2.5, 1.0}}, {}, 0.3}, 1e-10, 100));
}

TEST_CASE("fox_wright termination contract") {
    const auto hit_cap = fox_wright({{}, {}, 30.0}, 1e-12, 5);
    CHECK_FALSE(hit_cap.converged);
    CHECK(hit_cap.terms_used == 5);
    CHECK(hit_cap.tail_bound > 1.0);

    const auto ok = fox_wright({{}, {}, 0.7}, 1e-10, 200);
    CHECK(ok.converged);
    CHECK(ok.tail_bound <= 1e-10 * std::max(1.0, std::fabs(ok.value)));
    CHECK(ok.terms_used < 200);
}

TEST_CASE("alternating partial sums bracket the limit") {
    // z^k/k! at z = -0.4: strictly alternating with decreasing terms
    const double limit = std::exp(-0.4);
    double prev_side = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const auto partial = fox_wright({{}, {}, -0.4}, 1e-300, k);
        const double side = partial.value - limit;
        CHECK(side != 0.0);
        if (k > 1)
            CHECK(side * prev_side < 0.0);
        prev_side = side;
    }
}

namespace {

// The two-psi-one assembly of the double-series expansion, built from
// the generic evaluator. z and gamma enter only through xi = z*gamma/2.
double psi_assembly(const CauchyParams& p, int d, double z) {
    const double xi = 0.5 * z * p.gamma;
    const double pref = std::exp(-d * std::log(z) - 0.5 * d * std::log(M_PI) -
                                 specfun::lgamma_real(p.lambda).log_abs);
    const FoxWrightSpec a{
        {{p.lambda, 1.0}, {0.5 * (d - p.lambda * p.delta), -0.5 * p.delta}},
        {{0.5 * p.lambda * p.delta, 0.5 * p.delta}},
        -std::pow(xi, p.delta)};
    const FoxWrightSpec b{
        {{d / p.delta, 2.0 / p.delta}, {(p.lambda * p.delta - d) / p.delta, -2.0 / p.delta}},
        {{0.5 * d, 1.0}},
        -xi * xi};
    const auto ra = fox_wright(a, 1e-14, 400);
    const auto rb = fox_wright(b, 1e-14, 400);
    REQUIRE(ra.converged);
    REQUIRE(rb.converged);
    return pref * (std::pow(xi, p.lambda * p.delta) * ra.value +
                   (2.0 / p.delta) * std::pow(xi, d) * rb.value);
}

} // namespace

TEST_CASE("double series equals its two-psi-one form") {
    for (double delta : {0.8, 1.3, 2.0}) {
        for (double lambda : {0.6, 1.7}) {
            for (int d : {1, 2}) {
                for (double xi : {0.1, 0.5, 1.0}) {
                    CAPTURE(delta);
                    CAPTURE(lambda);
                    CAPTURE(d);
                    CAPTURE(xi);
                    const CauchyParams p(delta, lambda, 2.0 * xi);
                    REQUIRE_FALSE(cauchy_series_pole_collision(p, d, 400));
                    const auto direct = cauchy_sdf_series(p, d, 1.0, 1e-13, 400);
                    REQUIRE(direct.converged);
                    CHECK(direct.value > 0.0); // it is a spectral density
                    CHECK(rel_err(direct.value, psi_assembly(p, d, 1.0)) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("series tolerance contract") {
    const CauchyParams p(2.0, 1.0, 1.0);
    const auto r = cauchy_sdf_series(p, 1, 1.0, 1e-13, 300);
    CHECK(r.converged);
    CHECK(r.tail_bound <= 1e-13);
    CHECK(std::fabs(r.value - 0.5 * std::exp(-1.0)) <= 1e-13);

    const auto capped = cauchy_sdf_series(p, 1, 1.0, 1e-13, 3);
    CHECK_FALSE(capped.converged);
}

TEST_CASE("pole-collision guard") {
    // lambda*delta sits exactly on the d+2n ladder
    CHECK(cauchy_series_pole_collision(CauchyParams(1.0, 1.0, 1.0), 1));
    CHECK(cauchy_series_pole_collision(CauchyParams(2.0, 2.5, 1.0), 1));
    CHECK(cauchy_series_pole_collision(CauchyParams(2.0, 1.0, 1.0), 2));
    // collisions at later term indices: (lambda+1)*delta = d+2
    CHECK(cauchy_series_pole_collision(CauchyParams(1.0, 3.0, 1.0), 2));
    CHECK(cauchy_series_pole_collision(CauchyParams(1.5, 1.0, 1.0), 1));
    // (0.75+3)*0.8 = 3 = 1+2: collides, but only once the n=1 term is in
    // range
    CHECK(cauchy_series_pole_collision(CauchyParams(0.8, 0.75, 1.0), 1, 300));
    CHECK_FALSE(cauchy_series_pole_collision(CauchyParams(0.8, 0.75, 1.0), 1, 1));
    // separated families
    CHECK_FALSE(cauchy_series_pole_collision(CauchyParams(2.0, 1.0, 1.0), 1));
    CHECK_FALSE(cauchy_series_pole_collision(CauchyParams(0.8, 0.6, 1.0), 1));
    CHECK_FALSE(cauchy_series_pole_collision(CauchyParams(1.0, 2.5, 1.0), 1));

    CHECK_THROWS_AS(cauchy_sdf_series(CauchyParams(1.0, 1.0, 1.0), 1, 0.3, 1e-10, 300),
                    pole_error);
    CHECK_THROWS_AS(cauchy_sdf_series(CauchyParams(1.0, 3.0, 1.0), 2, 0.3, 1e-10, 300),
                    pole_error);
}

TEST_CASE("small-z constant term") {
    // value -> (2/delta) G(d/delta) G(lambda-d/delta) /
    //          (G(d/2) G(lambda)) * gamma^d / (2^d pi^{d/2})  as z -> 0
    // (needs lambda*delta > d)
    const CauchyParams p(1.8, 1.1, 1.0);
    const int d = 1;
    const double c0 =
        (2.0 / p.delta) *
        std::exp(specfun::lgamma_real(d / p.delta).log_abs +
                 specfun::lgamma_real(p.lambda - d / p.delta).log_abs -
                 specfun::lgamma_real(0.5 * d).log_abs -
                 specfun::lgamma_real(p.lambda).log_abs) *
        std::pow(p.gamma, d) / (std::pow(2.0, d) * std::pow(M_PI, 0.5 * d));
    const auto series = cauchy_sdf_series(p, d, 1e-4, 1e-13, 300);
    REQUIRE(series.converged);
    CHECK(rel_err(series.value, c0) <= 1e-3);
    // quadrature sees the same constant
    const auto mb = cauchy_sdf_mb(p, d, 1e-4, default_mb_config(p, d, 1e-4, 1e-10));
    CHECK(rel_err(mb.value, c0) <= 1e-3);
    CHECK(rel_err(mb.value, series.value) <= 1e-8);
}

TEST_CASE("series input validation") {
    const CauchyParams p(1.8, 1.1, 1.0);
    CHECK_THROWS_AS(cauchy_sdf_series(p, 0, 1.0, 1e-10, 100), validation_error);
    CHECK_THROWS_AS(cauchy_sdf_series(p, 4, 1.0, 1e-10, 100), validation_error);
    CHECK_THROWS_AS(cauchy_sdf_series(p, 1, 0.0, 1e-10, 100), validation_error);
    CHECK_THROWS_AS(cauchy_sdf_series(p, 1, 1.0, 0.0, 100), validation_error);
    CHECK_THROWS_AS(cauchy_sdf_series(p, 1, 1.0, 1e-10, 0), validation_error);
    CHECK_THROWS_AS(fox_wright({{}, {}, 1.0}, -1.0, 100), validation_error);
}
