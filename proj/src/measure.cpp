#include "haar/measure.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "haar/errors.hpp"

namespace haar {

namespace detail {

std::vector<double> probe_grid(const Interval& domain, int n) {
    std::vector<double> xs;
    xs.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double u = 0.02 + 0.96 * (k + 0.5) / n;
        const double z = 7.0 * u - 3.5;
        double x;
        if (domain.bounded())
            x = domain.lo + u * (domain.hi - domain.lo);
        else if (domain.lo > -kInf)
            x = domain.lo + std::exp(z);
        else if (domain.hi < kInf)
            x = domain.hi - std::exp(z);
        else
            x = z;
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

}  // namespace detail

namespace {

Carrier carrier_from_interval(const Interval& iv) {
    if (iv.lo == -kInf && iv.hi == kInf)
        return Carrier::full_line();
    if (iv.lo == 0.0 && iv.hi == kInf)
        return Carrier::half_line();
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
        throw ConstructionError("carrier interval with one infinite endpoint other than (0,inf)");
    return Carrier::open_interval(iv.lo, iv.hi);
}

}  // namespace

Bijection1D Bijection1D::identity() {
    Bijection1D f;
    f.forward = Expr::parse("x");
    f.inverse = Expr::parse("x");
    f.desc = "identity";
    return f;
}

void Bijection1D::validate(int samples) const {
    // Domain-side probe: the forward map is monotone in the declared
    // direction and lands inside the codomain. Values that saturate onto
    // the boundary of the codomain are float artifacts of extreme
    // arguments; they are skipped, not failed.
    double prev = 0.0;
    bool have_prev = false;
    int checked = 0;
    for (double x : detail::probe_grid(domain, samples)) {
        double y;
        try {
            y = fwd(x);
        } catch (const DomainError&) {
            continue;
        }
        if (y < codomain.lo || (std::isfinite(codomain.hi) && y > codomain.hi))
            throw ConstructionError("bijection leaves its codomain");
        if (y == codomain.lo || y == codomain.hi)
            continue;
        if (have_prev) {
            const bool ok = increasing ? (y > prev) : (y < prev);
            if (!ok)
                throw ConstructionError("bijection is not monotone in the declared direction");
        }
        prev = y;
        have_prev = true;
        ++checked;
    }
    if (checked < samples / 2)
        throw ConstructionError("bijection validation could not evaluate enough samples");

    // Codomain-side probe: domain points obtained by pulling back
    // representative carrier points round-trip through the pair. (Pulled-
    // back points sit where doubles represent the maps faithfully, which a
    // raw domain grid does not guarantee for saturating maps.)
    int round_trips = 0;
    for (double y : detail::probe_grid(codomain, samples)) {
        double x;
        try {
            x = inv(y);
        } catch (const DomainError&) {
            continue;
        }
        if (x < domain.lo || x > domain.hi)
            throw ConstructionError("inverse leaves the domain");
        try {
            const double back = inv(fwd(x));
            if (std::abs(back - x) > 1e-10 * std::max(1.0, std::abs(x)))
                throw ConstructionError("inverse(forward(x)) deviates from x");
        } catch (const DomainError&) {
            continue;
        }
        ++round_trips;
    }
    if (round_trips < samples / 2)
        throw ConstructionError("bijection validation could not evaluate enough samples");
}

double integrate(const MeasureSpec& m, const IntervalSet& s, double tol) {
    if (!(tol > 0.0))
        throw ConstructionError("integration tolerance must be positive");
    if (!m.carrier.scalar())
        throw ConstructionError("interval masses are defined for 1-D carriers only");

    const Interval hull = m.carrier.as_interval();
    std::vector<Interval> pieces;
    for (const Interval& iv : s.parts()) {
        Interval clipped = iv.intersect(hull);
        if (clipped.empty())
            continue;
        // Split where the density is known to jump.
        double lo = clipped.lo;
        for (double brk : m.density_breaks) {
            if (brk > lo && brk < clipped.hi) {
                pieces.push_back({lo, brk});
                lo = brk;
            }
        }
        pieces.push_back({lo, clipped.hi});
    }
    if (pieces.empty())
        return 0.0;

    const double piece_tol = tol / static_cast<double>(pieces.size());
    double total = 0.0;
    std::size_t evals = 0;
    for (const Interval& iv : pieces) {
        QuadratureResult r = integrate_de(m.density, iv.lo, iv.hi, piece_tol);
        evals += r.evaluations;
        total += r.value;
        if (!r.converged) {
            QuadratureResult partial{total, r.error_estimate, evals, false};
            throw QuadratureFailure("quadrature budget exhausted while integrating a set",
                                    partial);
        }
    }
    return total;
}

namespace {

double map_endpoint(const Bijection1D& f, double y, bool toward_domain) {
    // Endpoints sitting exactly on the codomain (resp. domain) boundary map
    // to the opposite boundary without evaluating the expression there.
    const Interval& from = toward_domain ? f.codomain : f.domain;
    const Interval& to = toward_domain ? f.domain : f.codomain;
    if (y == from.lo)
        return f.increasing ? to.lo : to.hi;
    if (y == from.hi)
        return f.increasing ? to.hi : to.lo;
    return toward_domain ? f.inv(y) : f.fwd(y);
}

IntervalSet map_set(const Bijection1D& f, const IntervalSet& s, bool toward_domain) {
    const Interval& from = toward_domain ? f.codomain : f.domain;
    std::vector<Interval> out;
    out.reserve(s.size());
    for (const Interval& iv : s.parts()) {
        if (!(from.lo <= iv.lo && iv.hi <= from.hi))
            throw ConstructionError(toward_domain ? "set outside codomain" : "set outside domain");
        const double a = map_endpoint(f, iv.lo, toward_domain);
        const double b = map_endpoint(f, iv.hi, toward_domain);
        if (f.increasing)
            out.push_back({a, b});
        else
            out.push_back({b, a});
    }
    return IntervalSet(std::move(out));
}

}  // namespace

IntervalSet preimage_set(const Bijection1D& f, const IntervalSet& s) {
    return map_set(f, s, true);
}

IntervalSet image_set(const Bijection1D& f, const IntervalSet& s) {
    return map_set(f, s, false);
}

MeasureSpec pushforward(const MeasureSpec& m, const Bijection1D& f) {
    if (!m.carrier.scalar())
        throw ConstructionError("pushforward through expressions is 1-D");

    // The density route needs |d f^{-1}/dx| on the codomain; probe a grid
    // so a map that is non-differentiable on a whole subinterval fails at
    // construction time instead of mid-quadrature.
    for (double y : detail::probe_grid(f.codomain, 16)) {
        try {
            (void)f.inv_derivative(y);
        } catch (const DomainError&) {
            throw ConstructionError("inverse derivative undefined on the codomain");
        }
    }

    MeasureSpec out;
    out.name = m.name + "_pushforward";
    out.carrier = carrier_from_interval(f.codomain);
    const auto base_density = m.density;
    const Bijection1D map = f;
    out.density = [base_density, map](double x) {
        return base_density(map.inv(x)) * std::abs(map.inv_derivative(x));
    };
    out.density_desc = "pushforward of (" + m.density_desc + ") under " +
                       (f.desc.empty() ? std::string("f") : f.desc);
    out.mass_class = m.mass_class;
    for (double brk : m.density_breaks) {
        if (f.domain.contains(brk)) {
            try {
                out.density_breaks.push_back(f.fwd(brk));
            } catch (const DomainError&) {
            }
        }
    }
    std::sort(out.density_breaks.begin(), out.density_breaks.end());
    return out;
}

}  // namespace haar
