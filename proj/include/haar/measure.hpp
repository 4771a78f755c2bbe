#pragma once

#include <functional>
#include <optional>
#include <string>

#include "haar/expr.hpp"
#include "haar/groups.hpp"
#include "haar/interval.hpp"
#include "haar/quadrature.hpp"

namespace haar {

namespace detail {
/// Deterministic interior probe points of an interval. Bounded intervals
/// get an affine grid over the middle 96%; unbounded directions follow the
/// library's sampling convention (standard normal range, pushed through exp
/// for half-lines), so probes stay where doubles represent the maps
/// faithfully.
std::vector<double> probe_grid(const Interval& domain, int n);
}  // namespace detail

/// A monotone bijection between two intervals of the line, given by paired
/// closed-form expressions for the forward and inverse maps.
struct Bijection1D {
    Expr forward;
    Expr inverse;
    Params params;
    Interval domain{-kInf, kInf};
    Interval codomain{-kInf, kInf};
    bool increasing = true;
    std::string desc;

    double fwd(double x) const { return forward.eval(x, params); }
    double inv(double y) const { return inverse.eval(y, params); }
    double inv_derivative(double y) const { return inverse.derivative_at(y, params); }

    static Bijection1D identity();

    /// Sampled sanity check: monotone in the declared direction, maps into
    /// the codomain, inverse(forward(x)) == x within 1e-10 * max(1,|x|).
    /// Throws ConstructionError on violation.
    void validate(int samples = 64) const;
};

/// Mass of an interval set under a density measure, by double-exponential
/// quadrature with absolute tolerance tol. Intervals are clipped to the
/// carrier and split at declared density breakpoints. Throws
/// QuadratureFailure (with partial estimate) on budget exhaustion.
double integrate(const MeasureSpec& m, const IntervalSet& s, double tol);

/// f^{-1}(s) for s inside the codomain. Monotone maps send intervals to
/// intervals; a decreasing map reverses the endpoints, and the half-open
/// convention is restored by an endpoint swap (a measure-zero adjustment,
/// all measures here are diffused).
IntervalSet preimage_set(const Bijection1D& f, const IntervalSet& s);

/// f(s) for s inside the domain; same conventions as preimage_set.
IntervalSet image_set(const Bijection1D& f, const IntervalSet& s);

/// The transported measure: density q(x) = p(f^{-1}(x)) * |d f^{-1}/dx|,
/// so that the mass of Y equals the base mass of f^{-1}(Y).
MeasureSpec pushforward(const MeasureSpec& m, const Bijection1D& f);

}  // namespace haar
