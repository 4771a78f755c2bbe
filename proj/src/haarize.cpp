#include "haar/haarize.hpp"

#include <algorithm>
#include <cmath>

#include "haar/errors.hpp"

namespace haar {

HotelShift HotelShift::integer_offsets(const Distribution& d, int depth) {
    HotelShift shift;
    std::vector<double> used_u;
    const auto in_interior = [&](double x) {
        return x > d.support.lo && x < d.support.hi;
    };
    // Center-outward enumeration 0, 1, -1, 2, -2, ... started at 0 when the
    // interior contains it, else near the interior midpoint.
    double anchor = 0.0;
    if (!in_interior(0.0)) {
        const Interval s = d.support;
        anchor = s.bounded() ? std::ceil(0.5 * (s.lo + s.hi)) : std::ceil(s.lo + 1.0);
    }
    for (int k = 0; static_cast<int>(shift.points.size()) < depth && k < 4 * depth + 8; ++k) {
        const int offset = (k % 2 == 1) ? (k + 1) / 2 : -k / 2;
        const double x = anchor + offset;
        if (!in_interior(x))
            continue;
        const double u = d.cdf(x);
        if (!(u > 0.0 && u < 1.0))
            continue;  // saturated in double precision
        if (std::find(used_u.begin(), used_u.end(), u) != used_u.end())
            continue;
        used_u.push_back(u);
        shift.points.push_back(x);
    }
    return shift;
}

struct HaarizedGroup::Core {
    Distribution dist;
    HotelShift shift;
    std::map<double, double> phi_at_escape;  // x -> phi(x), exact doubles
    std::map<double, double> escape_at_u;    // phi(x) -> x

    double phi(double x) const {
        if (!(x >= dist.support.lo && x < dist.support.hi))
            throw DomainError("point outside the support");
        const auto hit = phi_at_escape.find(x);
        if (hit != phi_at_escape.end())
            return hit->second;
        return dist.cdf(x);
    }

    double phi_inv(double u) const {
        if (!(u >= 0.0 && u < 1.0))
            throw DomainError("phi_inv argument must lie in [0,1)");
        const auto hit = escape_at_u.find(u);
        if (hit != escape_at_u.end())
            return hit->second;
        if (u == 0.0)
            return dist.support.lo;  // closed-left support, cdf(lo) = 0
        return dist.quantile(u);
    }

    IntervalSet translate(double g1, double g2, const IntervalSet& s) const {
        const Interval support = dist.support;
        const double t = mod1(phi(g1) + phi(g2));
        std::vector<Interval> out;
        for (const Interval& iv : s.parts()) {
            if (!(support.lo <= iv.lo && iv.hi <= support.hi))
                throw ConstructionError("set outside support");
            // Raw CDF images; phi differs only on the mu-null escape set.
            const double ua = (iv.lo == support.lo) ? 0.0 : dist.cdf(iv.lo);
            const double ub = (iv.hi >= support.hi) ? 1.0 : dist.cdf(iv.hi);
            const double len = ub - ua;
            if (!(len > 0.0))
                continue;
            const double va = mod1(ua + t);
            auto back = [&](double u) {
                if (u <= 0.0)
                    return support.lo;
                if (u >= 1.0)
                    return support.hi;
                return dist.quantile(u);
            };
            if (va + len <= 1.0) {
                out.push_back({back(va), back(va + len)});
            } else {
                out.push_back({back(va), support.hi});
                out.push_back({support.lo, back(va + len - 1.0)});
            }
        }
        return IntervalSet(std::move(out));
    }
};

HaarizedGroup::HaarizedGroup(Distribution dist, HotelShift shift) {
    auto core = std::make_shared<Core>();
    core->dist = std::move(dist);
    core->shift = std::move(shift);
    const Distribution& d = core->dist;

    // A diffused measure needs a strictly increasing CDF on its support.
    {
        double prev = -kInf;
        bool have_prev = false;
        for (double x : detail::probe_grid(d.support, 33)) {
            const double c = d.cdf(x);
            if (have_prev && !(c > prev))
                throw ConstructionError("cdf is not strictly increasing on the support");
            prev = c;
            have_prev = true;
        }
    }

    if (core->shift.empty()) {
        if (!d.closed_left)
            throw ConstructionError(
                "a full-line (open-left) distribution needs a Hilbert-hotel shift to "
                "make the cdf a bijection onto [0,1)");
    } else {
        const auto& pts = core->shift.points;
        for (double a : pts)
            if (!(a > d.support.lo && a < d.support.hi))
                throw ConstructionError("escape point outside the support interior");
        // phi(a0) = 0, phi(an) = cdf(a(n-1)); the value cdf(a_last) belongs
        // to the unrealized tail of the sequence.
        core->phi_at_escape[pts[0]] = 0.0;
        core->escape_at_u[0.0] = pts[0];
        for (std::size_t n = 1; n < pts.size(); ++n) {
            const double u = d.cdf(pts[n - 1]);
            core->phi_at_escape[pts[n]] = u;
            core->escape_at_u[u] = pts[n];
        }
        if (core->escape_at_u.size() != pts.size())
            throw ConstructionError("escape sequence produced colliding cdf values");
    }

    core_ = core;
    std::shared_ptr<const Core> c = core_;

    const Interval s = d.support;
    group_.name = "haarized-" + d.name;
    if (s.lo == -kInf && s.hi == kInf)
        group_.carrier = Carrier::full_line();
    else if (s.lo == 0.0 && s.hi == kInf)
        group_.carrier = Carrier::half_line();
    else if (s.lo == 0.0 && s.hi == 1.0)
        group_.carrier = Carrier::circle();
    else
        group_.carrier = Carrier::open_interval(s.lo, s.hi);

    group_.op = [c](const Point& x, const Point& y) {
        return Point{c->phi_inv(mod1(c->phi(x[0]) + c->phi(y[0])))};
    };
    group_.identity = {c->phi_inv(0.0)};
    group_.invert = [c](const Point& x) {
        const double u = c->phi(x[0]);
        return Point{c->phi_inv(u == 0.0 ? 0.0 : 1.0 - u)};
    };
    group_.metric = [c](const Point& x, const Point& y) {
        const double d2 = std::abs(c->phi(x[0]) - c->phi(y[0]));
        return std::min(d2, 1.0 - d2);
    };
    group_.tags = {true, Compactness::Compact, true};
}

const Distribution& HaarizedGroup::dist() const { return core_->dist; }
const HotelShift& HaarizedGroup::shift() const { return core_->shift; }

double HaarizedGroup::phi(double x) const { return core_->phi(x); }
double HaarizedGroup::phi_inv(double u) const { return core_->phi_inv(u); }

IntervalSet HaarizedGroup::translate_set(double g1, double g2, const IntervalSet& s) const {
    return core_->translate(g1, g2, s);
}

IntervalSet HaarizedGroup::translate_set(double g, const IntervalSet& s, Side side) const {
    const double e = group_.identity1();
    return side == Side::Right ? core_->translate(e, g, s) : core_->translate(g, e, s);
}

SetTranslator HaarizedGroup::translator() const {
    std::shared_ptr<const Core> c = core_;
    return [c](double g1, double g2, const IntervalSet& s) { return c->translate(g1, g2, s); };
}

HaarizedGroup haarize_probability(const Distribution& d, HotelShift shift) {
    return HaarizedGroup(d, std::move(shift));
}

HaarizedGroup haarize_probability(const Distribution& d) {
    return HaarizedGroup(d, d.closed_left ? HotelShift::none() : HotelShift::integer_offsets(d));
}

}  // namespace haar
