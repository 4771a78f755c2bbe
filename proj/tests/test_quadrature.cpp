#include <doctest.h>

#include <cmath>

#include "haar/interval.hpp"
#include "haar/quadrature.hpp"

using haar::integrate_de;
using haar::quad;

TEST_CASE("finite smooth integrands") {
    CHECK(quad([](double) { return 1.0; }, 2.0, 5.0, 1e-10) == doctest::Approx(3.0));
    CHECK(quad([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(quad([](double x) { return std::sin(x); }, 0.0, 3.141592653589793, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("endpoint singularities") {
    // 1/sqrt(x) on (0,1) = 2; the double-exponential substitution absorbs it.
    CHECK(quad([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10) ==
          doctest::Approx(2.0).epsilon(1e-9));
    // log singularity
    CHECK(quad([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10) ==
          doctest::Approx(-1.0).epsilon(1e-9));
    // the velocity Haar density on [0, 1/2), c = 1: integral = atanh(1/2)
    CHECK(quad([](double x) { return 1.0 / (1.0 - x * x); }, 0.0, 0.5, 1e-10) ==
          doctest::Approx(0.5493061443340549).epsilon(1e-11));
}

TEST_CASE("half-line and full-line ranges") {
    CHECK(quad([](double x) { return std::exp(-x); }, 0.0, haar::kInf, 1e-10) ==
          doctest::Approx(1.0).epsilon(1e-10));
    const double inv_sqrt2pi = 0.3989422804014327;
    CHECK(quad([=](double x) { return inv_sqrt2pi * std::exp(-0.5 * x * x); }, -haar::kInf,
               haar::kInf, 1e-10) == doctest::Approx(1.0).epsilon(1e-10));
    // Cauchy tail: integral over (-inf, 0) of the standard Cauchy = 1/2.
    CHECK(quad([](double x) { return 1.0 / (3.141592653589793 * (1.0 + x * x)); }, -haar::kInf,
               0.0, 1e-10) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("degenerate and failing cases") {
    CHECK(quad([](double) { return 1.0; }, 2.0, 2.0, 1e-10) == 0.0);
    // An oscillation the rule cannot resolve within a tiny budget: the
    // failure carries the partial estimate.
    try {
        quad([](double x) { return std::sin(1e6 * x); }, 0.0, 1.0, 1e-12, 500);
        FAIL("expected QuadratureFailure");
    } catch (const haar::QuadratureFailure& f) {
        CHECK(f.partial().evaluations > 0);
        CHECK(!f.partial().converged);
    }
}

TEST_CASE("error estimate is reported") {
    const auto r = integrate_de([](double x) { return std::cos(x); }, 0.0, 1.0, 1e-10);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
    CHECK(r.error_estimate <= 1e-10);
}
