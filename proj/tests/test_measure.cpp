#include <doctest.h>

#include <cmath>
#include <random>

#include "haar/errors.hpp"
#include "haar/measure.hpp"
#include "haar/transport.hpp"

using namespace haar;

namespace {

MeasureSpec lebesgue_line() { return base_real_line().second; }

}  // namespace

TEST_CASE("integrate golden values") {
    // Lebesgue on [2,5)
    CHECK(integrate(lebesgue_line(), IntervalSet(2.0, 5.0), 1e-10) == doctest::Approx(3.0));

    // density 1/x on [1, e): closed-form oracle ln(e/1) = 1
    MeasureSpec inv_x;
    inv_x.carrier = Carrier::half_line();
    inv_x.density = [](double x) { return 1.0 / x; };
    CHECK(integrate(inv_x, IntervalSet(1.0, 2.718281828459045), 1e-10) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // density c^2/(c^2 - t^2), c = 1, on [0, 1/2):
    // antiderivative (c/2) ln((c+t)/(c-t)) gives ln(3)/2
    MeasureSpec vel;
    vel.carrier = Carrier::open_interval(-1.0, 1.0);
    vel.density = [](double t) { return 1.0 / (1.0 - t * t); };
    CHECK(integrate(vel, IntervalSet(0.0, 0.5), 1e-10) ==
          doctest::Approx(0.5493061443340549).epsilon(1e-9));
}

TEST_CASE("integrate splits at declared density breaks") {
    MeasureSpec stepped;
    stepped.carrier = Carrier::full_line();
    stepped.density = [](double x) { return x < 1.0 ? 1.0 : 3.0; };
    stepped.density_breaks = {1.0};
    CHECK(integrate(stepped, IntervalSet(0.0, 2.0), 1e-10) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("preimage of interval sets") {
    const Bijection1D f = log_bijection();  // exp: R -> (0,inf)
    const IntervalSet s = IntervalSet(1.0, 2.718281828459045);
    const IntervalSet pre = preimage_set(f, s);
    REQUIRE(pre.size() == 1);
    CHECK(pre.parts()[0].lo == doctest::Approx(0.0));
    CHECK(pre.parts()[0].hi == doctest::Approx(1.0));

    CHECK(preimage_set(Bijection1D::identity(), s).str() == s.str());

    // decreasing map x -> -x reverses endpoints up to the half-open swap
    Bijection1D neg;
    neg.forward = Expr::parse("-x");
    neg.inverse = Expr::parse("-x");
    neg.increasing = false;
    const IntervalSet got = preimage_set(neg, IntervalSet(1.0, 2.0));
    REQUIRE(got.size() == 1);
    CHECK(got.parts()[0].lo == doctest::Approx(-2.0));
    CHECK(got.parts()[0].hi == doctest::Approx(-1.0));
}

TEST_CASE("preimage rejects sets outside the codomain") {
    const Bijection1D f = velocity_bijection(1.0);  // codomain (-1,1)
    CHECK_THROWS_AS(preimage_set(f, IntervalSet(0.5, 2.0)), ConstructionError);
}

TEST_CASE("preimage maps codomain-boundary endpoints to domain boundaries") {
    const Bijection1D f = velocity_bijection(1.0);
    const IntervalSet pre = preimage_set(f, IntervalSet(0.0, 1.0));
    REQUIRE(pre.size() == 1);
    CHECK(pre.parts()[0].lo == doctest::Approx(0.0));
    CHECK(pre.parts()[0].hi == kInf);
}

TEST_CASE("pushforward densities match the paper catalogue") {
    // Lebesgue through exp: density 1/x on (0,inf)
    const MeasureSpec log_m = pushforward(lebesgue_line(), log_bijection());
    for (double x : {0.5, 1.0, 2.0, 7.5})
        CHECK(log_m.density(x) == doctest::Approx(1.0 / x).epsilon(1e-12));

    // Lebesgue through c*tanh(y/c): density c^2/(c^2 - t^2)
    for (double c : {0.5, 1.0, 2.0}) {
        const MeasureSpec vel_m = pushforward(lebesgue_line(), velocity_bijection(c));
        for (double t : {-0.9 * c, -0.3 * c, 0.0, 0.4 * c, 0.85 * c})
            CHECK(vel_m.density(t) ==
                  doctest::Approx(c * c / (c * c - t * t)).epsilon(1e-11));
    }

    // identity transport keeps the density
    const MeasureSpec same = pushforward(lebesgue_line(), Bijection1D::identity());
    CHECK(same.density(0.37) == doctest::Approx(1.0));
}

TEST_CASE("pushforward consistency: density route equals preimage route") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const Bijection1D maps[] = {log_bijection(), velocity_bijection(1.0), arctan_bijection(1.0)};
    for (const Bijection1D& f : maps) {
        const MeasureSpec pushed = pushforward(lebesgue_line(), f);
        for (int i = 0; i < 100; ++i) {
            double a = u(rng), b = u(rng);
            if (a > b)
                std::swap(a, b);
            if (!(a < b))
                continue;
            // Map through the forward image so the set sits in the codomain.
            const IntervalSet y = image_set(f, IntervalSet(a, b));
            const double density_route = integrate(pushed, y, 1e-9);
            const double preimage_route = integrate(lebesgue_line(), preimage_set(f, y), 1e-9);
            CHECK(std::abs(density_route - preimage_route) <= 1e-7);
        }
    }
}

TEST_CASE("pushforward conserves probability mass") {
    MeasureSpec gauss;
    gauss.carrier = Carrier::full_line();
    const double inv_sqrt2pi = 0.3989422804014327;
    gauss.density = [=](double x) { return inv_sqrt2pi * std::exp(-0.5 * x * x); };
    gauss.mass_class = MassClass::Probability;
    const MeasureSpec pushed = pushforward(gauss, velocity_bijection(1.0));
    CHECK(pushed.mass_class == MassClass::Probability);
    CHECK(integrate(pushed, IntervalSet(-1.0, 1.0), 1e-9) ==
          doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("preimage length bookkeeping is exact for affine maps") {
    Bijection1D affine;
    affine.forward = Expr::parse("2*x + 1");
    affine.inverse = Expr::parse("(x - 1)/2");
    affine.desc = "2x+1";
    const IntervalSet s = IntervalSet::parse("[1,3) u [5,9)");
    const IntervalSet pre = preimage_set(affine, s);
    CHECK(pre.total_length() == doctest::Approx(0.5 * s.total_length()));
    CHECK(pre.size() == 2);
}

TEST_CASE("bijection validation catches broken pairs") {
    Bijection1D broken;
    broken.forward = Expr::parse("exp(x)");
    broken.inverse = Expr::parse("ln(2*x)");  // wrong inverse
    broken.domain = {-kInf, kInf};
    broken.codomain = {0.0, kInf};
    CHECK_THROWS_AS(broken.validate(), ConstructionError);

    Bijection1D not_monotone;
    not_monotone.forward = Expr::parse("x^2");
    not_monotone.inverse = Expr::parse("sqrt(x)");
    not_monotone.domain = {-2.0, 2.0};
    not_monotone.codomain = {0.0, 4.0};
    CHECK_THROWS_AS(not_monotone.validate(), ConstructionError);
}

TEST_CASE("catalogued bijections round-trip on 1000 sampled points") {
    // Domain points are sampled through the carrier convention: uniform
    // codomain draws pulled back by the inverse, so they follow the
    // transported group's own scale for any c.
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const Bijection1D maps[] = {velocity_bijection(0.5), velocity_bijection(1.0),
                                velocity_bijection(3e8), log_bijection(), arctan_bijection(1.0),
                                arctan_bijection(2.5)};
    for (const Bijection1D& f : maps) {
        for (int i = 0; i < 1000; ++i) {
            double y;
            if (f.codomain.bounded()) {
                y = f.codomain.lo + (f.codomain.hi - f.codomain.lo) * u01(rng);
            } else {
                std::normal_distribution<double> z(0.0, 1.0);
                y = std::exp(z(rng));  // half-line codomain
            }
            if (!(y > f.codomain.lo && y < f.codomain.hi))
                continue;
            const double x = f.inv(y);
            const double back = f.inv(f.fwd(x));
            CHECK(std::abs(back - x) <= 1e-10 * std::max(1.0, std::abs(x)));
        }
    }
}
