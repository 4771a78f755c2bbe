#pragma once

#include <functional>
#include <string>
#include <vector>

#include "haar/interval.hpp"

namespace haar {

/// A point of a carrier. One entry for the scalar carriers, n entries for
/// the product space.
using Point = std::vector<double>;

struct Carrier {
    enum class Kind { FullLine, OpenInterval, HalfLine, Circle, Product };

    Kind kind = Kind::FullLine;
    double lo = -kInf;
    double hi = kInf;
    int dim = 1;

    static Carrier full_line() { return {Kind::FullLine, -kInf, kInf, 1}; }
    static Carrier open_interval(double a, double b);
    static Carrier half_line() { return {Kind::HalfLine, 0.0, kInf, 1}; }
    static Carrier circle() { return {Kind::Circle, 0.0, 1.0, 1}; }
    static Carrier product(int n);

    int dimension() const { return kind == Kind::Product ? dim : 1; }
    bool scalar() const { return kind != Kind::Product; }

    /// The carrier as a half-open interval; endpoints of open carriers are
    /// excluded by the diffused-measure convention. Product carriers have
    /// no interval form.
    Interval as_interval() const { return {lo, hi}; }

    bool contains(double x) const;
    bool contains(const Point& p) const;
    std::string str() const;
};

/// Topological classification. Declared metadata propagated by
/// construction, never detected numerically.
enum class Compactness { Compact, LocallyCompactNoncompact, NonLocallyCompact };

struct GroupTags {
    bool abelian = true;
    Compactness compactness = Compactness::LocallyCompactNoncompact;
    bool dense_in_itself = true;
};

std::string to_string(Compactness c);

/// A Polish group presented concretely: carrier, operation, identity,
/// inversion, and a metric. Immutable after construction; all closures are
/// pure, so concurrent evaluation is safe.
struct GroupSpec {
    std::string name;
    Carrier carrier;
    std::function<Point(const Point&, const Point&)> op;
    Point identity;
    std::function<Point(const Point&)> invert;
    std::function<double(const Point&, const Point&)> metric;
    GroupTags tags;

    // Scalar conveniences for 1-D carriers.
    double op1(double x, double y) const { return op({x}, {y})[0]; }
    double invert1(double x) const { return invert({x})[0]; }
    double metric1(double x, double y) const { return metric({x}, {y}); }
    double identity1() const { return identity[0]; }
};

enum class MassClass { Probability, SigmaFiniteNonFinite, QuasiFinite };

/// A measure given by a density with respect to length (1-D carriers) or
/// volume (product carriers, where the density is constant and interval
/// masses are not evaluated numerically).
struct MeasureSpec {
    std::string name;
    Carrier carrier;
    std::function<double(double)> density;
    std::string density_desc;
    MassClass mass_class = MassClass::SigmaFiniteNonFinite;

    /// Known density discontinuities; integration splits intervals here.
    std::vector<double> density_breaks;
};

/// (x + y) mod 1 mapped into [0, 1). Exact on dyadic rationals.
double mod1(double x);

// Base groups with known Haar measures.
std::pair<GroupSpec, MeasureSpec> base_real_line();
std::pair<GroupSpec, MeasureSpec> base_circle();
std::pair<GroupSpec, MeasureSpec> base_real_n(int n);

}  // namespace haar
