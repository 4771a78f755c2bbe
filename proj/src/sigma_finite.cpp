#include "haar/sigma_finite.hpp"

#include <algorithm>
#include <cmath>

#include "haar/distribution.hpp"
#include "haar/errors.hpp"
#include "haar/quadrature.hpp"

namespace haar {

namespace {

constexpr double kPartMassTol = 1e-12;

double weight(int k) { return std::ldexp(1.0, -k); }  // 2^-k

}  // namespace

Partition Partition::unit_center_outward() {
    Partition p;
    p.part = [](int k) {
        if (k < 1)
            throw ConstructionError("partition index starts at 1");
        const int m = (k == 1) ? 0 : (k % 2 == 0 ? k / 2 : -(k - 1) / 2);
        return Interval{static_cast<double>(m), static_cast<double>(m) + 1.0};
    };
    p.truncation = 40;
    return p;
}

NormalizedMeasure normalize_sigma_finite(const MeasureSpec& m, const Partition& parts) {
    if (!m.carrier.scalar())
        throw ConstructionError("sigma-finite normalization is 1-D");
    if (parts.truncation < 1)
        throw ConstructionError("partition truncation must be positive");

    NormalizedMeasure out;
    out.source = m;
    out.tail_bound = weight(parts.truncation);

    double cover_lo = kInf, cover_hi = -kInf;
    for (int k = 1; k <= parts.truncation; ++k) {
        const Interval y = parts.part(k);
        if (y.empty())
            throw ConstructionError("empty partition part");
        for (int j = 0; j + 1 < k; ++j) {
            if (!out.parts[j].intersect(y).empty())
                throw ConstructionError("partition parts overlap");
        }
        const double mass = integrate(m, IntervalSet(y.lo, y.hi), kPartMassTol);
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw ConstructionError("partition part with zero or infinite mass");
        out.parts.push_back(y);
        out.part_mass.push_back(mass);
        cover_lo = std::min(cover_lo, y.lo);
        cover_hi = std::max(cover_hi, y.hi);
    }
    out.coverage = {cover_lo, cover_hi};

    // Density p1(x) = p(x) / (2^k mu(Y_k)) on Y_k; zero outside the
    // realized coverage (the truncated tail).
    const std::vector<Interval> realized = out.parts;
    const std::vector<double> masses = out.part_mass;
    const auto source_density = m.density;
    out.spec.name = m.name + "-normalized";
    out.spec.carrier = m.carrier;
    out.spec.density = [realized, masses, source_density](double x) {
        for (std::size_t i = 0; i < realized.size(); ++i) {
            if (realized[i].contains(x))
                return source_density(x) / std::ldexp(masses[i], static_cast<int>(i) + 1);
        }
        return 0.0;
    };
    out.spec.density_desc = "(" + m.density_desc + ")/(2^k mass_k) on part k";
    out.spec.mass_class = MassClass::Probability;
    for (const Interval& y : realized) {
        out.spec.density_breaks.push_back(y.lo);
        out.spec.density_breaks.push_back(y.hi);
    }
    std::sort(out.spec.density_breaks.begin(), out.spec.density_breaks.end());
    out.spec.density_breaks.erase(
        std::unique(out.spec.density_breaks.begin(), out.spec.density_breaks.end()),
        out.spec.density_breaks.end());
    return out;
}

double NormalizedMeasure::cdf(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Interval& y = parts[i];
        if (y.hi <= x) {
            acc += weight(static_cast<int>(i) + 1);
        } else if (y.contains(x)) {
            const double partial = integrate(source, IntervalSet(y.lo, x), kPartMassTol);
            acc += weight(static_cast<int>(i) + 1) * partial / part_mass[i];
        }
    }
    return acc;
}

double NormalizedMeasure::quantile(double u) const {
    const auto cdf_fn = [this](double x) { return cdf(x); };
    const auto pdf_fn = spec.density;
    return numeric_quantile(cdf_fn, pdf_fn, coverage, u, 1e-13);
}

double NormalizedMeasure::mass_series(const IntervalSet& s, double tol) const {
    double acc = 0.0;
    const double piece_tol = tol / static_cast<double>(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const IntervalSet cut = s.intersect(parts[i]);
        if (cut.empty())
            continue;
        acc += weight(static_cast<int>(i) + 1) * integrate(source, cut, piece_tol) /
               part_mass[i];
    }
    return acc;
}

MeasureSpec mu_star_measure(const NormalizedMeasure& mu1, const NormalizedMeasure& base,
                            const std::vector<double>& boundaries,
                            const std::vector<int>& boundary_part) {
    if (boundaries.size() != boundary_part.size() + 1)
        throw ConstructionError("partition mismatch: need one part index per boundary gap");
    MeasureSpec out;
    out.name = mu1.source.name + "-mu-star";
    out.carrier = mu1.source.carrier;
    const auto p1 = mu1.spec.density;
    const std::vector<double> bounds = boundaries;
    const std::vector<int> part_of_gap = boundary_part;
    const std::vector<double> base_mass = base.part_mass;
    out.density = [p1, bounds, part_of_gap, base_mass](double x) {
        const auto it = std::upper_bound(bounds.begin(), bounds.end(), x);
        if (it == bounds.begin() || it == bounds.end())
            return 0.0;  // outside the realized coverage
        const int k = part_of_gap[static_cast<std::size_t>(it - bounds.begin()) - 1];
        if (k <= 0)
            return 0.0;
        return std::ldexp(base_mass[k - 1], k) * p1(x);
    };
    out.density_desc = "2^k lambda2(X2_k) p1 on phi^-1(X2_k)";
    out.mass_class = MassClass::SigmaFiniteNonFinite;
    out.density_breaks = bounds;
    for (double b : mu1.spec.density_breaks)
        out.density_breaks.push_back(b);
    std::sort(out.density_breaks.begin(), out.density_breaks.end());
    out.density_breaks.erase(
        std::unique(out.density_breaks.begin(), out.density_breaks.end()),
        out.density_breaks.end());
    return out;
}

double mu_star_mass(const NormalizedMeasure& mu1, const NormalizedMeasure& base,
                    const std::function<double(double)>& phi_inv, const IntervalSet& s,
                    double tol) {
    double acc = 0.0;
    const double piece_tol = tol / static_cast<double>(base.parts.size());
    for (std::size_t i = 0; i < base.parts.size(); ++i) {
        const Interval x2k = base.parts[i];
        const Interval pre{phi_inv(x2k.lo), phi_inv(x2k.hi)};
        const IntervalSet cut = s.intersect(pre);
        if (cut.empty())
            continue;
        const double m1 = integrate(mu1.spec, cut, piece_tol);
        acc += std::ldexp(base.part_mass[i], static_cast<int>(i) + 1) * m1;
    }
    return acc;
}

struct SigmaFiniteHaarization::Core {
    NormalizedMeasure mu1, mu2;
    std::vector<double> boundaries;  // phi^-1 of base part edges, ascending
    std::vector<int> boundary_part;  // base part index per gap

    // The realized coverages of the two sides correspond under phi; edges
    // map to edges so boundary pullbacks never leave (0,1).
    double phi(double x) const {
        const double u = mu1.cdf(x);
        if (u <= 0.0)
            return mu2.coverage.lo;
        if (u >= 1.0)
            return mu2.coverage.hi;
        return mu2.quantile(u);
    }
    double phi_inv(double y) const {
        const double u = mu2.cdf(y);
        if (u <= 0.0)
            return mu1.coverage.lo;
        if (u >= 1.0)
            return mu1.coverage.hi;
        return mu1.quantile(u);
    }

    IntervalSet translate(double g1, double g2, const IntervalSet& s) const {
        const double shift = phi(g1) + phi(g2);
        std::vector<Interval> out;
        out.reserve(s.size());
        for (const Interval& iv : s.parts())
            out.push_back({phi_inv(phi(iv.lo) + shift), phi_inv(phi(iv.hi) + shift)});
        return IntervalSet(std::move(out));
    }
};

SigmaFiniteHaarization::SigmaFiniteHaarization(MeasureSpec m, const Partition& parts,
                                               const Partition& base_parts) {
    auto core = std::make_shared<Core>();
    core->mu1 = normalize_sigma_finite(m, parts);
    core->mu2 = normalize_sigma_finite(base_real_line().second, base_parts);

    // Base part edges pulled back to the source carrier. The pullback of
    // each edge is computed once; density lookups then bisect.
    std::vector<double> ys;
    for (const Interval& p : core->mu2.parts) {
        ys.push_back(p.lo);
        ys.push_back(p.hi);
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::vector<int> gap_part;
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        const double mid = 0.5 * (ys[i] + ys[i + 1]);
        int k = 0;  // 0 = gap not covered by any realized part
        for (std::size_t j = 0; j < core->mu2.parts.size(); ++j) {
            if (core->mu2.parts[j].contains(mid)) {
                k = static_cast<int>(j) + 1;
                break;
            }
        }
        gap_part.push_back(k);
    }

    core->boundaries.reserve(ys.size());
    for (double y : ys)
        core->boundaries.push_back(core->phi_inv(y));
    core->boundary_part = gap_part;

    mu1_ = core->mu1;
    mu2_ = core->mu2;
    core_ = core;
    std::shared_ptr<const Core> c = core_;

    group_.name = m.name + "-sigma-haarized";
    group_.carrier = m.carrier;
    group_.op = [c](const Point& x, const Point& y) {
        return Point{c->phi_inv(c->phi(x[0]) + c->phi(y[0]))};
    };
    group_.identity = {core->phi_inv(0.0)};
    group_.invert = [c](const Point& x) { return Point{c->phi_inv(-c->phi(x[0]))}; };
    group_.metric = [c](const Point& x, const Point& y) {
        return std::abs(c->phi(x[0]) - c->phi(y[0]));
    };
    group_.tags = {true, Compactness::LocallyCompactNoncompact, true};

    mu_star_ = mu_star_measure(mu1_, mu2_, core->boundaries, core->boundary_part);
}

double SigmaFiniteHaarization::phi(double x) const { return core_->phi(x); }
double SigmaFiniteHaarization::phi_inv(double y) const { return core_->phi_inv(y); }

double SigmaFiniteHaarization::mu_star_series(const IntervalSet& s, double tol) const {
    std::shared_ptr<const Core> c = core_;
    return mu_star_mass(mu1_, mu2_, [c](double y) { return c->phi_inv(y); }, s, tol);
}

IntervalSet SigmaFiniteHaarization::translate(double g1, double g2, const IntervalSet& s) const {
    return core_->translate(g1, g2, s);
}

SetTranslator SigmaFiniteHaarization::translator() const {
    std::shared_ptr<const Core> c = core_;
    return [c](double g1, double g2, const IntervalSet& s) { return c->translate(g1, g2, s); };
}

int SigmaFiniteHaarization::equivalence_disagreements(int samples) const {
    const Interval window = mu1_.coverage;
    int bad = 0;
    for (int i = 0; i < samples; ++i) {
        const double x = window.lo + (window.hi - window.lo) * (i + 0.5) / samples;
        const bool source_pos = mu1_.source.density(x) > 0.0;
        const bool star_pos = mu_star_.density(x) > 0.0;
        if (source_pos != star_pos)
            ++bad;
    }
    return bad;
}

SigmaFiniteHaarization haarize_sigma_finite(const MeasureSpec& m, const Partition& parts,
                                            const Partition& base_parts) {
    return SigmaFiniteHaarization(m, parts, base_parts);
}

}  // namespace haar
