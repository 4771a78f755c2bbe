#include "haar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "haar/errors.hpp"
#include "haar/quadrature.hpp"

namespace haar {

namespace {

std::string point_str(const Point& p) {
    std::ostringstream os;
    os.precision(12);
    if (p.size() == 1) {
        os << p[0];
    } else {
        os << '(';
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i)
                os << ',';
            os << p[i];
        }
        os << ')';
    }
    return os.str();
}

/// Collects the worst witnesses while scanning samples.
class WitnessHeap {
public:
    void offer(double residual, const std::string& what) {
        if (items_.size() < 10) {
            items_.push_back({what, residual});
            return;
        }
        auto weakest = std::min_element(
            items_.begin(), items_.end(),
            [](const Witness& a, const Witness& b) { return a.residual < b.residual; });
        if (residual > weakest->residual)
            *weakest = {what, residual};
    }

    std::vector<Witness> take() {
        std::sort(items_.begin(), items_.end(),
                  [](const Witness& a, const Witness& b) { return a.residual > b.residual; });
        return std::move(items_);
    }

private:
    std::vector<Witness> items_;
};

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return "pass";
        case Verdict::Fail:
            return "fail";
        case Verdict::Inconclusive:
            return "inconclusive";
        case Verdict::DeclaredOnly:
            return "declared-only";
    }
    return "?";
}

std::string to_json_line(const Report& r) {
    nlohmann::json j;
    j["schema"] = "haar-report/1";
    j["check"] = r.check;
    j["subject"] = r.subject;
    j["samples"] = r.samples;
    j["max_residual"] = r.max_residual;
    j["tol"] = r.tol;
    j["verdict"] = to_string(r.verdict);
    j["domain_errors"] = r.domain_errors;
    if (!r.note.empty())
        j["note"] = r.note;
    nlohmann::json w = nlohmann::json::array();
    for (const Witness& x : r.witnesses)
        w.push_back({{"at", x.what}, {"residual", x.residual}});
    j["witnesses"] = w;
    return j.dump();
}

std::string to_table(const std::vector<Report>& reports) {
    std::ostringstream os;
    os << std::left << std::setw(28) << "check" << std::setw(26) << "subject" << std::right
       << std::setw(8) << "samples" << std::setw(14) << "residual" << std::setw(10) << "tol"
       << "  verdict\n";
    for (const Report& r : reports) {
        os << std::left << std::setw(28) << r.check << std::setw(26) << r.subject << std::right
           << std::setw(8) << r.samples << std::setw(14) << std::scientific
           << std::setprecision(3) << r.max_residual << std::setw(10) << std::setprecision(0)
           << r.tol << "  " << to_string(r.verdict);
        if (!r.note.empty())
            os << "  (" << r.note << ")";
        os << "\n";
    }
    return os.str();
}

Sampler::Sampler(Carrier carrier, std::uint64_t seed) : carrier_(carrier), rng_(seed) {}

double Sampler::sample1() {
    switch (carrier_.kind) {
        case Carrier::Kind::OpenInterval: {
            std::uniform_real_distribution<double> u(carrier_.lo, carrier_.hi);
            double x = u(rng_);
            while (!(x > carrier_.lo && x < carrier_.hi))
                x = u(rng_);
            return x;
        }
        case Carrier::Kind::Circle: {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            return u(rng_);
        }
        case Carrier::Kind::HalfLine: {
            std::normal_distribution<double> z(0.0, 1.0);
            return std::exp(z(rng_));
        }
        case Carrier::Kind::FullLine: {
            std::normal_distribution<double> z(0.0, 1.0);
            return z(rng_);
        }
        case Carrier::Kind::Product:
            throw ConstructionError("sample1 needs a scalar carrier");
    }
    throw ConstructionError("unknown carrier kind");
}

Point Sampler::sample() {
    if (carrier_.kind != Carrier::Kind::Product)
        return {sample1()};
    std::normal_distribution<double> z(0.0, 1.0);
    Point p(carrier_.dim);
    for (double& v : p)
        v = z(rng_);
    return p;
}

IntervalSet Sampler::interval_set(int max_pieces) {
    std::uniform_int_distribution<int> count(1, std::max(1, max_pieces));
    const int pieces = count(rng_);
    std::vector<double> ends;
    ends.reserve(2 * pieces);
    while (static_cast<int>(ends.size()) < 2 * pieces) {
        const double x = sample1();
        if (std::find(ends.begin(), ends.end(), x) == ends.end())
            ends.push_back(x);
    }
    std::sort(ends.begin(), ends.end());
    std::vector<Interval> parts;
    for (int i = 0; i < pieces; ++i)
        parts.push_back({ends[2 * i], ends[2 * i + 1]});
    return IntervalSet(std::move(parts));
}

Report check_group_axioms(const GroupSpec& g, int n, double tol, std::uint64_t seed) {
    Report r;
    r.check = "axioms";
    r.subject = g.name;
    r.samples = n;
    r.tol = tol;
    Sampler s(g.carrier, seed);
    WitnessHeap heap;
    for (int i = 0; i < n; ++i) {
        const Point x = s.sample();
        const Point y = s.sample();
        const Point z = s.sample();
        try {
            const double assoc = g.metric(g.op(g.op(x, y), z), g.op(x, g.op(y, z)));
            const double id_r = g.metric(g.op(x, g.identity), x);
            const double id_l = g.metric(g.op(g.identity, x), x);
            const double inv = g.metric(g.op(x, g.invert(x)), g.identity);
            const struct {
                const char* law;
                double v;
            } laws[] = {{"associativity", assoc},
                        {"right-identity", id_r},
                        {"left-identity", id_l},
                        {"inverse", inv}};
            for (const auto& law : laws) {
                if (law.v > r.max_residual)
                    r.max_residual = law.v;
                if (law.v > tol)
                    heap.offer(law.v, std::string(law.law) + " at x=" + point_str(x) +
                                          " y=" + point_str(y) + " z=" + point_str(z));
            }
        } catch (const DomainError&) {
            ++r.domain_errors;
        }
    }
    r.witnesses = heap.take();
    r.verdict = r.max_residual <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

Report check_abelian(const GroupSpec& g, int n, double tol, std::uint64_t seed) {
    Report r;
    r.check = "abelian";
    r.subject = g.name;
    r.samples = n;
    r.tol = tol;
    Sampler s(g.carrier, seed);
    WitnessHeap heap;
    for (int i = 0; i < n; ++i) {
        const Point x = s.sample();
        const Point y = s.sample();
        try {
            const double v = g.metric(g.op(x, y), g.op(y, x));
            if (v > r.max_residual)
                r.max_residual = v;
            if (v > tol)
                heap.offer(v, "x=" + point_str(x) + " y=" + point_str(y));
        } catch (const DomainError&) {
            ++r.domain_errors;
        }
    }
    r.witnesses = heap.take();
    r.verdict = r.max_residual <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

Report check_metric_invariance(const GroupSpec& g, int n, double tol, std::uint64_t seed) {
    Report r;
    r.check = "metric-invariance";
    r.subject = g.name;
    r.samples = n;
    r.tol = tol;
    Sampler s(g.carrier, seed);
    WitnessHeap heap;
    for (int i = 0; i < n; ++i) {
        const Point x = s.sample();
        const Point y = s.sample();
        const Point h1 = s.sample();
        const Point h2 = s.sample();
        try {
            const double before = g.metric(x, y);
            const double after =
                g.metric(g.op(g.op(h1, x), h2), g.op(g.op(h1, y), h2));
            const double v = std::abs(after - before);
            if (v > r.max_residual)
                r.max_residual = v;
            if (v > tol)
                heap.offer(v, "x=" + point_str(x) + " y=" + point_str(y) +
                                  " h1=" + point_str(h1) + " h2=" + point_str(h2));
        } catch (const DomainError&) {
            ++r.domain_errors;
        }
    }
    r.witnesses = heap.take();
    r.verdict = r.max_residual <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

Report check_measure_invariance(const MeasureSpec& m, const SetTranslator& translate,
                                const std::vector<IntervalSet>& sets,
                                const std::vector<double>& elements, double identity, Side side,
                                double tol, double quad_tol) {
    Report r;
    r.check = "measure-invariance";
    r.subject = m.name;
    r.samples = static_cast<int>(std::min(sets.size(), elements.size()));
    r.tol = tol;
    WitnessHeap heap;
    for (int i = 0; i < r.samples; ++i) {
        const IntervalSet& e = sets[i];
        const double g = elements[i];
        double g1 = identity, g2 = identity;
        if (side == Side::Left)
            g1 = g;
        else if (side == Side::Right)
            g2 = g;
        else {
            g1 = g;
            g2 = elements[(i + 1) % elements.size()];
        }
        try {
            const double before = integrate(m, e, quad_tol);
            const double after = integrate(m, translate(g1, g2, e), quad_tol);
            const double v = std::abs(after - before);
            if (v > r.max_residual)
                r.max_residual = v;
            if (v > tol)
                heap.offer(v, "E=" + e.str() + " g1=" + std::to_string(g1) +
                                  " g2=" + std::to_string(g2));
        } catch (const QuadratureFailure& q) {
            r.verdict = Verdict::Inconclusive;
            r.note = std::string("quadrature failure: ") + q.what();
        } catch (const DomainError&) {
            ++r.domain_errors;
        }
    }
    r.witnesses = heap.take();
    if (r.verdict != Verdict::Inconclusive)
        r.verdict = r.max_residual <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

Report check_pushforward_consistency(const MeasureSpec& base, const Bijection1D& f,
                                     const std::vector<IntervalSet>& sets, double tol,
                                     double quad_tol) {
    Report r;
    r.check = "pushforward-consistency";
    r.subject = base.name + " under " + (f.desc.empty() ? "f" : f.desc);
    r.samples = static_cast<int>(sets.size());
    r.tol = tol;
    const MeasureSpec pushed = pushforward(base, f);
    WitnessHeap heap;
    for (const IntervalSet& y : sets) {
        try {
            const double density_route = integrate(pushed, y, quad_tol);
            const double preimage_route = integrate(base, preimage_set(f, y), quad_tol);
            const double v = std::abs(density_route - preimage_route);
            if (v > r.max_residual)
                r.max_residual = v;
            if (v > tol)
                heap.offer(v, "Y=" + y.str());
        } catch (const QuadratureFailure& q) {
            r.verdict = Verdict::Inconclusive;
            r.note = std::string("quadrature failure: ") + q.what();
        }
    }
    r.witnesses = heap.take();
    if (r.verdict != Verdict::Inconclusive)
        r.verdict = r.max_residual <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

Report check_quasi_invariance(const MeasureSpec& m, const SetTranslator& translate,
                              const std::vector<IntervalSet>& sets,
                              const std::vector<double>& elements, double threshold) {
    Report r;
    r.check = "quasi-invariance";
    r.subject = m.name;
    r.samples = static_cast<int>(std::min(sets.size(), elements.size()));
    r.tol = 0.0;
    WitnessHeap heap;
    int disagreements = 0;
    for (int i = 0; i < r.samples; ++i) {
        const IntervalSet& e = sets[i];
        const double g1 = elements[i];
        const double g2 = elements[(i + 1) % elements.size()];
        try {
            const bool before = integrate(m, e, threshold / 10.0) > threshold;
            const bool after = integrate(m, translate(g1, g2, e), threshold / 10.0) > threshold;
            if (before != after) {
                ++disagreements;
                heap.offer(1.0, "E=" + e.str() + " g1=" + std::to_string(g1) +
                                    " g2=" + std::to_string(g2));
            }
        } catch (const QuadratureFailure& q) {
            r.verdict = Verdict::Inconclusive;
            r.note = std::string("quadrature failure: ") + q.what();
        }
    }
    r.max_residual = disagreements;
    r.witnesses = heap.take();
    if (r.verdict != Verdict::Inconclusive)
        r.verdict = disagreements == 0 ? Verdict::Pass : Verdict::Fail;
    return r;
}

namespace {

double determinant(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col]))
                pivot = row;
        if (a[pivot][col] == 0.0)
            return 0.0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j)
                a[row][j] -= factor * a[col][j];
        }
    }
    return det;
}

}  // namespace

Report check_jacobian_unimodular(
    const std::function<std::vector<Dual>(const Point&, const std::vector<Dual>&)>& op, int dim,
    int n, double tol, std::uint64_t seed) {
    Report r;
    r.check = "jacobian-unimodular";
    r.subject = "dim-" + std::to_string(dim);
    r.samples = n;
    r.tol = tol;
    Sampler s(Carrier::product(dim), seed);
    WitnessHeap heap;
    for (int i = 0; i < n; ++i) {
        const Point g = s.sample();
        const Point x = s.sample();
        std::vector<std::vector<double>> jac(dim, std::vector<double>(dim));
        for (int j = 0; j < dim; ++j) {
            std::vector<Dual> xd(dim);
            for (int k = 0; k < dim; ++k)
                xd[k] = Dual{x[k], k == j ? 1.0 : 0.0};
            const std::vector<Dual> out = op(g, xd);
            for (int k = 0; k < dim; ++k)
                jac[k][j] = out[k].d;
        }
        const double v = std::abs(std::abs(determinant(jac)) - 1.0);
        if (v > r.max_residual)
            r.max_residual = v;
        if (v > tol)
            heap.offer(v, "g=" + point_str(g) + " x=" + point_str(x));
    }
    r.witnesses = heap.take();
    r.verdict = r.max_residual <= tol ? Verdict::Pass : Verdict::Fail;
    return r;
}

Report declared_only(const std::string& check, const std::string& subject,
                     const std::string& note) {
    Report r;
    r.check = check;
    r.subject = subject;
    r.verdict = Verdict::DeclaredOnly;
    r.note = note;
    return r;
}

}  // namespace haar
