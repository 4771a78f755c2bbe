#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace haar {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Half-open interval [lo, hi). Endpoints may be infinite. Measures here
/// are diffused, so endpoint membership never carries mass; the half-open
/// convention is purely a bookkeeping choice.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const { return !(lo < hi); }
    double length() const { return empty() ? 0.0 : hi - lo; }
    bool contains(double x) const { return lo <= x && x < hi; }
    bool contains(const Interval& other) const {
        return other.empty() || (lo <= other.lo && other.hi <= hi);
    }
    bool bounded() const { return lo > -kInf && hi < kInf; }

    Interval intersect(const Interval& other) const {
        return {lo > other.lo ? lo : other.lo, hi < other.hi ? hi : other.hi};
    }
};

/// Finite union of disjoint half-open intervals, sorted ascending. This is
/// the desk-scale stand-in for a Borel set: closed under the translations
/// used in the library (monotone transports split nothing, circle rotations
/// split at most once), and quadrature-friendly.
class IntervalSet {
public:
    IntervalSet() = default;

    /// Normalizes: drops empty intervals, sorts, merges touching pieces.
    /// Throws ConstructionError on overlapping input.
    explicit IntervalSet(std::vector<Interval> parts);

    IntervalSet(double lo, double hi) : IntervalSet(std::vector<Interval>{{lo, hi}}) {}

    /// Textual form: "[a,b) u [c,d)"; "{}" for the empty set.
    static IntervalSet parse(std::string_view text);
    std::string str() const;

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    double total_length() const;
    bool contains(double x) const;
    bool inside(const Interval& hull) const;

    IntervalSet intersect(const Interval& window) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet translate(double shift) const;

    /// Smallest interval covering the set; empty interval for the empty set.
    Interval hull() const;

private:
    std::vector<Interval> parts_;
};

}  // namespace haar
