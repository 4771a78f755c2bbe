#include <doctest.h>

#include <cmath>

#include "haar/distribution.hpp"
#include "haar/errors.hpp"
#include "haar/measure.hpp"

using namespace haar;

TEST_CASE("quantile golden values") {
    CHECK(uniform_01().quantile(0.25) == doctest::Approx(0.25));
    CHECK(exponential_dist(1.0).quantile(0.5) ==
          doctest::Approx(0.6931471805599453).epsilon(1e-14));
    // Numeric inversion against the erfc-based CDF.
    CHECK(normal_dist(0.0, 1.0).quantile(0.975) ==
          doctest::Approx(1.959963984540054).epsilon(1e-10));
    CHECK(cauchy_dist(0.0, 1.0).quantile(0.5) == doctest::Approx(0.0));
}

TEST_CASE("quantile rejects arguments outside (0,1)") {
    CHECK_THROWS_AS(uniform_01().quantile(0.0), DomainError);
    CHECK_THROWS_AS(normal_dist(0.0, 1.0).quantile(1.0), DomainError);
    CHECK_THROWS_AS(normal_dist(0.0, 1.0).quantile(-0.5), DomainError);
}

TEST_CASE("quantile inverts the cdf to 1e-12") {
    const Distribution dists[] = {normal_dist(0.3, 2.0), cauchy_dist(-1.0, 0.5),
                                  exponential_dist(2.5), beta_dist(2.0, 3.0),
                                  beta_dist(0.5, 0.5)};
    for (const Distribution& d : dists) {
        for (double u : {1e-6, 0.1, 0.25, 0.5, 0.75, 0.9, 0.9999}) {
            const double x = d.quantile(u);
            CHECK_MESSAGE(std::abs(d.cdf(x) - u) <= 1e-11, d.name << " u=" << u);
        }
    }
}

TEST_CASE("quantile at a singular corner reaches the x-representation floor") {
    // beta(1/2,1/2) at u -> 1: the density pole makes one ulp of x near 1
    // worth ~2e-11 of cdf mass, so 1e-12 is not representable there. The
    // solver must still land within a couple of x-ulps of the target.
    const Distribution d = beta_dist(0.5, 0.5);
    const double u = 1.0 - 1e-6;
    const double x = d.quantile(u);
    const double granularity = d.pdf(x) * std::abs(x) * 2.3e-16;
    CHECK(std::abs(d.cdf(x) - u) <= std::max(1e-12, 4.0 * granularity));
}

TEST_CASE("densities are probability densities") {
    const Distribution dists[] = {uniform_01(),          exponential_dist(1.0),
                                  normal_dist(0.0, 1.0), cauchy_dist(0.0, 1.0),
                                  beta_dist(2.0, 3.0),   beta_dist(0.5, 0.5)};
    for (const Distribution& d : dists) {
        const double mass =
            integrate(d.as_measure(), IntervalSet(d.support.lo, d.support.hi), 1e-9);
        CHECK_MESSAGE(std::abs(mass - 1.0) <= 1e-8, d.name);
    }
}

TEST_CASE("cdf endpoints and monotonicity") {
    const Distribution d = normal_dist(0.0, 1.0);
    CHECK(d.cdf(0.0) == doctest::Approx(0.5));
    CHECK(d.cdf(-10.0) < d.cdf(-1.0));
    CHECK(d.cdf(-1.0) < d.cdf(1.0));
    CHECK(exponential_dist(1.0).cdf(0.0) == 0.0);
    CHECK(uniform_01().cdf(0.0) == 0.0);
    CHECK(beta_dist(2.0, 2.0).cdf(0.5) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("selector parsing") {
    CHECK(parse_distribution("uniform").name == "uniform");
    CHECK(parse_distribution("exponential:2").support.hi == kInf);
    CHECK(parse_distribution("normal:0,1").closed_left == false);
    CHECK(parse_distribution("cauchy:0,1").name == "cauchy:0,1");
    CHECK(parse_distribution("beta:2,3").closed_left == true);
    CHECK_THROWS_AS(parse_distribution("pareto:1"), ConstructionError);
    CHECK_THROWS_AS(parse_distribution("normal:0"), ConstructionError);
    CHECK_THROWS_AS(parse_distribution("exponential:-1"), ConstructionError);
}
