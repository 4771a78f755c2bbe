#include <doctest.h>

#include <cmath>

#include "haar/haarize.hpp"
#include "haar/transport.hpp"
#include "haar/verify.hpp"

using namespace haar;

TEST_CASE("axiom checks pass for the built-in groups") {
    const auto [line, lm] = base_real_line();
    const auto [circle, cm] = base_circle();
    const GroupSpec groups[] = {line,
                                circle,
                                base_real_n(3).first,
                                velocity_group(1.0).group,
                                log_group().group,
                                arctan_group(1.0).group,
                                shear_group(4).group};
    for (const GroupSpec& g : groups) {
        const Report r = check_group_axioms(g, 1000, 1e-9, 1);
        CHECK_MESSAGE(r.verdict == Verdict::Pass, g.name << ": " << r.max_residual);
        const Report ab = check_abelian(g, 500, 1e-9, 2);
        CHECK_MESSAGE(ab.verdict == Verdict::Pass, g.name);
    }
}

TEST_CASE("circle axioms have zero residual on dyadic rationals") {
    const auto [circle, cm] = base_circle();
    // The sampler draws arbitrary reals; dyadic triples are exact, shown here
    // directly.
    const double dyadics[] = {0.0, 0.25, 0.5, 0.75, 0.125};
    for (double a : dyadics)
        for (double b : dyadics)
            for (double c : dyadics)
                CHECK(circle.op1(circle.op1(a, b), c) == circle.op1(a, circle.op1(b, c)));
}

TEST_CASE("fault injection: off-by-epsilon identity fails the axiom check") {
    auto [g, m] = base_real_line();
    g.name = "corrupted-real-line";
    g.identity = {1e-6};  // wrong identity
    const Report r = check_group_axioms(g, 200, 1e-9, 3);
    CHECK(r.verdict == Verdict::Fail);
    CHECK(!r.witnesses.empty());
    CHECK(r.witnesses.size() <= 10);
}

TEST_CASE("fault injection: matrix multiplication fails the abelian check") {
    // 2x2 matrices under multiplication, flattened into R^4.
    GroupSpec mat;
    mat.name = "gl2-ish";
    mat.carrier = Carrier::product(4);
    mat.op = [](const Point& a, const Point& b) {
        return Point{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                     a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
    };
    mat.identity = {1.0, 0.0, 0.0, 1.0};
    mat.invert = [](const Point& a) {
        const double det = a[0] * a[3] - a[1] * a[2];
        return Point{a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
    };
    mat.metric = [](const Point& a, const Point& b) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    };
    mat.tags = {false, Compactness::LocallyCompactNoncompact, true};
    const Report r = check_abelian(mat, 200, 1e-9, 4);
    CHECK(r.verdict == Verdict::Fail);
}

TEST_CASE("fault injection: scaling op fails the Jacobian check") {
    const int n = 3;
    const auto scaling = [](const Point& g, const std::vector<Dual>& x) {
        std::vector<Dual> r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            r[i] = Dual{g[i]} + Dual{2.0} * x[i];
        return r;
    };
    const Report r = check_jacobian_unimodular(scaling, n, 50, 1e-8, 5);
    CHECK(r.verdict == Verdict::Fail);
}

TEST_CASE("metric invariance passes for base and transported groups") {
    const auto [line, lm] = base_real_line();
    const Report r1 = check_metric_invariance(line, 1000, 1e-9, 6);
    CHECK(r1.verdict == Verdict::Pass);
    const Report r2 = check_metric_invariance(log_group().group, 1000, 1e-9, 7);
    CHECK(r2.verdict == Verdict::Pass);
    const Report r3 = check_metric_invariance(velocity_group(1.0).group, 1000, 1e-9, 8);
    CHECK(r3.verdict == Verdict::Pass);
}

TEST_CASE("measure invariance: lebesgue under real-line shifts is exact") {
    const auto [line, m] = base_real_line();
    const SetTranslator shift = [](double g1, double g2, const IntervalSet& s) {
        return s.translate(g1 + g2);
    };
    std::vector<IntervalSet> sets{IntervalSet(0.0, 1.0), IntervalSet::parse("[0,1) u [2,3)")};
    std::vector<double> elems{7.0, -2.5};
    const Report r =
        check_measure_invariance(m, shift, sets, elems, 0.0, Side::Left, 1e-9, 1e-11);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.max_residual <= 1e-10);
}

TEST_CASE("measure invariance for the velocity group") {
    const TransportResult v = velocity_group(1.0);
    std::vector<IntervalSet> sets{IntervalSet(0.0, 0.5)};
    std::vector<double> elems{0.3};
    const Report r = check_measure_invariance(v.measure, v.translate, sets, elems,
                                              v.group.identity1(), Side::Left, 1e-6, 1e-8);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.max_residual <= 1e-6);
}

TEST_CASE("pushforward consistency check and its verdicts") {
    const auto [line, m] = base_real_line();
    std::vector<IntervalSet> sets{IntervalSet(1.0, 2.0), IntervalSet(0.5, 4.0)};
    const Report ok = check_pushforward_consistency(m, log_bijection(), sets, 1e-7, 1e-9);
    CHECK(ok.verdict == Verdict::Pass);
}

TEST_CASE("declared-only reports for topological tags") {
    const Report r =
        declared_only("compactness", "velocity:1", "locally-compact-noncompact, by construction");
    CHECK(r.verdict == Verdict::DeclaredOnly);
    CHECK(r.passed());
}

TEST_CASE("reports are reproducible for a fixed seed") {
    const TransportResult v = velocity_group(1.0);
    const Report a = check_group_axioms(v.group, 500, 1e-9, 12345);
    const Report b = check_group_axioms(v.group, 500, 1e-9, 12345);
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.domain_errors == b.domain_errors);
    const Report c = check_group_axioms(v.group, 500, 1e-9, 54321);
    CHECK(((c.max_residual != a.max_residual) || (c.domain_errors != a.domain_errors) ||
           a.max_residual == 0.0));
}

TEST_CASE("json serialization is stable and parseable") {
    Report r;
    r.check = "axioms";
    r.subject = "circle";
    r.samples = 10;
    r.max_residual = 1e-12;
    r.tol = 1e-9;
    r.verdict = Verdict::Pass;
    const std::string line = to_json_line(r);
    CHECK(line.find("\"schema\":\"haar-report/1\"") != std::string::npos);
    CHECK(line.find("\"verdict\":\"pass\"") != std::string::npos);
    CHECK(line.find('\n') == std::string::npos);

    std::vector<Report> rs{r};
    const std::string table = to_table(rs);
    CHECK(table.find("axioms") != std::string::npos);
    CHECK(table.find("pass") != std::string::npos);
}
