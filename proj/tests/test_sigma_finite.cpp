#include <doctest.h>

#include <cmath>
#include <random>

#include "haar/errors.hpp"
#include "haar/sigma_finite.hpp"
#include "haar/verify.hpp"

using namespace haar;

namespace {

MeasureSpec lebesgue_line() { return base_real_line().second; }

}  // namespace

TEST_CASE("unit center-outward partition enumerates 0,1,-1,2,-2,...") {
    const Partition p = Partition::unit_center_outward();
    CHECK(p.part(1).lo == 0.0);
    CHECK(p.part(2).lo == 1.0);
    CHECK(p.part(3).lo == -1.0);
    CHECK(p.part(4).lo == 2.0);
    CHECK(p.part(5).lo == -2.0);
    for (int k = 1; k <= 10; ++k)
        CHECK(p.part(k).length() == 1.0);
}

TEST_CASE("normalization: Lebesgue with unit parts becomes a probability") {
    const NormalizedMeasure mu1 =
        normalize_sigma_finite(lebesgue_line(), Partition::unit_center_outward());
    // total mass (within truncation tail)
    const double total =
        integrate(mu1.spec, IntervalSet(mu1.coverage.lo, mu1.coverage.hi), 1e-10);
    CHECK(std::abs(total - 1.0) <= 1e-8 + mu1.tail_bound);
    CHECK(mu1.tail_bound < 1e-12);

    // mu1(Y_1) = 2^-1; half of Y_1 gets 2^-2
    CHECK(integrate(mu1.spec, IntervalSet(0.0, 1.0), 1e-12) == doctest::Approx(0.5));
    CHECK(integrate(mu1.spec, IntervalSet(0.0, 0.5), 1e-12) == doctest::Approx(0.25));
    // series route agrees
    CHECK(mu1.mass_series(IntervalSet(0.0, 1.0), 1e-12) == doctest::Approx(0.5));
    CHECK(mu1.mass_series(IntervalSet(0.0, 0.5), 1e-12) == doctest::Approx(0.25));
}

TEST_CASE("normalization rejects zero-mass parts") {
    MeasureSpec vanishing;
    vanishing.carrier = Carrier::full_line();
    vanishing.density = [](double x) { return (0.0 <= x && x < 1.0) ? 1.0 : 0.0; };
    vanishing.density_desc = "indicator [0,1)";
    CHECK_THROWS_AS(normalize_sigma_finite(vanishing, Partition::unit_center_outward()),
                    ConstructionError);
}

TEST_CASE("normalized cdf and quantile invert each other") {
    const NormalizedMeasure mu1 =
        normalize_sigma_finite(lebesgue_line(), Partition::unit_center_outward());
    for (double u : {0.05, 0.25, 0.5, 0.6, 0.9}) {
        const double x = mu1.quantile(u);
        CHECK(std::abs(mu1.cdf(x) - u) <= 1e-11);
    }
    // Identity scenario: F1(0) sums the weights of the parts left of 0,
    // the parts at m = -1..-19 with indices k = 3, 5, ..., 39:
    // sum of 2^-k over odd k >= 3 is 1/6 (up to the 4^-20 tail).
    CHECK(mu1.cdf(0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
}

TEST_CASE("identity scenario: mu* recovers Lebesgue") {
    const SigmaFiniteHaarization h = haarize_sigma_finite(
        lebesgue_line(), Partition::unit_center_outward(), Partition::unit_center_outward());

    // phi is the identity up to quantile tolerance
    for (double x : {-3.0, -0.5, 0.0, 0.7, 2.5})
        CHECK(h.phi(x) == doctest::Approx(x).epsilon(1e-9));

    // mu*([0,3)) = 3, by the series with finitely many nonzero terms
    CHECK(h.mu_star_series(IntervalSet(0.0, 3.0), 1e-10) == doctest::Approx(3.0).epsilon(1e-8));
    // density route agrees
    CHECK(integrate(h.mu_star(), IntervalSet(0.0, 3.0), 1e-10) ==
          doctest::Approx(3.0).epsilon(1e-8));
    // mu*(empty) = 0
    CHECK(h.mu_star_series(IntervalSet(), 1e-10) == 0.0);
    // single-part preimage: mu*(phi^-1([k,k+1))) = 1
    CHECK(h.mu_star_series(IntervalSet(h.phi_inv(2.0), h.phi_inv(3.0)), 1e-10) ==
          doctest::Approx(1.0).epsilon(1e-8));

    // group reduces to (R,+)
    CHECK(h.group().op1(1.0, 2.0) == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(h.group().identity1() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("mu* is two-sided invariant on sets meeting few parts") {
    const SigmaFiniteHaarization h = haarize_sigma_finite(
        lebesgue_line(), Partition::unit_center_outward(), Partition::unit_center_outward());
    std::mt19937_64 rng(2025);
    std::normal_distribution<double> z(0.0, 1.5);
    for (int i = 0; i < 20; ++i) {
        double a = z(rng), b = z(rng);
        if (a > b)
            std::swap(a, b);
        if (!(a < b))
            continue;
        const IntervalSet e(a, b);  // meets at most 5 parts
        const double g1 = z(rng), g2 = z(rng);
        const double before = h.mu_star_series(e, 1e-9);
        const double after = h.mu_star_series(h.translate(g1, g2, e), 1e-9);
        CHECK(std::abs(after - before) <= 1e-6);
    }
}

TEST_CASE("mu* and mu are equivalent: densities vanish together") {
    const SigmaFiniteHaarization h = haarize_sigma_finite(
        lebesgue_line(), Partition::unit_center_outward(), Partition::unit_center_outward());
    CHECK(h.equivalence_disagreements(512) == 0);
}

TEST_CASE("a weighted sigma-finite measure haarizes too") {
    // density e^{-|x|} + 1/4: sigma-finite, strictly positive, not Lebesgue
    MeasureSpec m;
    m.carrier = Carrier::full_line();
    m.density = [](double x) { return std::exp(-std::abs(x)) + 0.25; };
    m.density_desc = "exp(-|x|) + 1/4";
    const SigmaFiniteHaarization h = haarize_sigma_finite(
        m, Partition::unit_center_outward(), Partition::unit_center_outward());

    std::mt19937_64 rng(31);
    std::normal_distribution<double> z(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        double a = z(rng), b = z(rng);
        if (a > b)
            std::swap(a, b);
        if (!(a < b))
            continue;
        const IntervalSet e(a, b);
        const double g1 = z(rng), g2 = z(rng);
        const double before = h.mu_star_series(e, 1e-9);
        const double after = h.mu_star_series(h.translate(g1, g2, e), 1e-9);
        CHECK(std::abs(after - before) <= 1e-6);
    }
    CHECK(h.equivalence_disagreements(256) == 0);
}

TEST_CASE("mu_star_measure rejects mismatched partitions") {
    const NormalizedMeasure mu1 =
        normalize_sigma_finite(lebesgue_line(), Partition::unit_center_outward());
    const std::vector<double> boundaries{0.0, 1.0, 2.0};
    const std::vector<int> wrong_gaps{1, 2, 3};  // needs boundaries.size()-1 entries
    CHECK_THROWS_AS(mu_star_measure(mu1, mu1, boundaries, wrong_gaps), ConstructionError);
}
