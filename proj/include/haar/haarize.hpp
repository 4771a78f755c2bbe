#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "haar/distribution.hpp"
#include "haar/groups.hpp"
#include "haar/interval.hpp"
#include "haar/transport.hpp"

namespace haar {

/// The countable escape sequence of the Hilbert-hotel correction. A CDF of
/// a full-line distribution maps onto (0,1), missing 0; re-mapping
/// phi(a0) = 0, phi(an) = cdf(a(n-1)) turns it into a bijection onto [0,1).
/// Only a finite prefix is ever realized: beyond a handful of points the
/// shifted CDF values collide in double precision, so realization stops at
/// `depth` or at the first saturated value, whichever comes first.
struct HotelShift {
    std::vector<double> points;

    static HotelShift none() { return {}; }

    /// Default escape sequence: integer offsets 0, 1, -1, 2, -2, ...
    /// intersected with the support interior, keeping only points whose CDF
    /// values stay strictly inside (0,1) and pairwise distinct.
    static HotelShift integer_offsets(const Distribution& d, int depth = 8);

    bool empty() const { return points.empty(); }
};

/// A diffused probability distribution turned into the Haar measure of a
/// compact group: the corrected CDF iso phi maps the support onto [0,1),
/// the group operation pulls circle addition back through phi, and the
/// input measure is two-sided invariant by construction. Immutable; copies
/// share the underlying state.
class HaarizedGroup {
public:
    HaarizedGroup(Distribution dist, HotelShift shift);

    /// Corrected CDF: cdf(x) off the escape set, the shifted values on it.
    double phi(double x) const;

    /// Inverse of phi on [0,1); exact on realized escape values.
    double phi_inv(double u) const;

    const Distribution& dist() const;
    const HotelShift& shift() const;
    const GroupSpec& group() const { return group_; }

    /// The input measure; Haar for the constructed group.
    MeasureSpec measure() const { return dist().as_measure(); }

    /// g1 (.) s (.) g2 as an interval set: shift by the phi-images mod 1,
    /// wraparound splits at most one extra piece per interval. Escape-set
    /// discrepancies are mu-null and ignored.
    IntervalSet translate_set(double g1, double g2, const IntervalSet& s) const;

    /// One-sided translation; the group is abelian, so the sides agree,
    /// but both are honored.
    IntervalSet translate_set(double g, const IntervalSet& s,
                              Side side = Side::Left) const;

    SetTranslator translator() const;

private:
    struct Core;
    std::shared_ptr<const Core> core_;
    GroupSpec group_;
};

/// Theorem 3.1 entry point. Distributions whose CDF already attains 0 at a
/// support point (uniform, exponential, beta) take HotelShift::none();
/// full-line distributions need a nonempty shift.
HaarizedGroup haarize_probability(const Distribution& d, HotelShift shift);

/// Convenience: picks the default shift automatically.
HaarizedGroup haarize_probability(const Distribution& d);

}  // namespace haar
