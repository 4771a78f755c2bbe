#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "haar/dual.hpp"
#include "haar/groups.hpp"
#include "haar/measure.hpp"

namespace haar {

/// Which side a single-element translation acts on. The built-in groups
/// are abelian, so the sides agree; the harness still exercises both.
enum class Side { Left, Right, TwoSided };

/// Two-sided set translation g1 (.) E (.) g2 in a group's own carrier
/// coordinates. Left translation passes the identity as g2 and vice versa.
using SetTranslator = std::function<IntervalSet(double g1, double g2, const IntervalSet&)>;

/// The outcome of transporting a base group and its Haar measure through a
/// bijection: the induced group, the pushforward measure, the witness map,
/// and a translator for interval sets.
struct TransportResult {
    GroupSpec group;
    MeasureSpec measure;
    std::optional<Bijection1D> witness;  // absent for the n-dimensional shear
    std::string provenance;
    SetTranslator translate;  // 1-D transports only
};

/// The transported group: op(x,y) = f(f^-1(x) . f^-1(y)), identity = f(e),
/// invert(x) = f((f^-1(x))^-1), metric(x,y) = rho(f^-1(x), f^-1(y)).
/// Abelianness and the compactness class carry over from the base.
GroupSpec transport_group(const GroupSpec& base, const Bijection1D& f);

/// The transported measure lambda_f(Y) = lambda(f^-1(Y)); same as
/// pushforward, named for the transport surface.
MeasureSpec transport_measure(const MeasureSpec& base_measure, const Bijection1D& f);

/// Full transport of (base, base Haar measure) through f. The base group
/// must have a scalar carrier.
TransportResult transport(const GroupSpec& base, const MeasureSpec& base_measure,
                          const Bijection1D& f, const std::string& name = "custom");

// Built-in transports.

/// (-c,c) with the relativistic velocity addition (x+y)/(1+xy/c^2). The op
/// and inversion use the closed forms and are cross-checked against the
/// generic transport at construction; Haar density c^2/(c^2-t^2).
TransportResult velocity_group(double c);

/// (0,inf) with multiplication, metric |ln x - ln y|, Haar density 1/x.
TransportResult log_group();

/// (-c,c) under f(x) = 2c*atan(x)/pi; metric |tan(pi x/2c) - tan(pi y/2c)|,
/// Haar density computed by change of variables.
TransportResult arctan_group(double c);

/// R^n (n >= 3) under the measure-preserving shear
/// f(x) = (x1, x1^2 + x2, x3, ..., xn); the transported measure is Lebesgue
/// itself while the operation differs from +.
TransportResult shear_group(int n);

// Witness bijections of the scalar built-ins (what the generic engine is
// fed in the cross-check tests).
Bijection1D velocity_bijection(double c);
Bijection1D log_bijection();
Bijection1D arctan_bijection(double c);

/// Shear operation evaluable on dual numbers, for Jacobian checks.
std::function<std::vector<Dual>(const Point&, const std::vector<Dual>&)> shear_dual_op(int n);

/// Per-point shear maps (templated over double/Dual in the source).
Point shear_forward(const Point& x);
Point shear_inverse(const Point& x);

/// Result of testing the one-dimensionality chain equality
/// rho(a_h(1), a_h(n)) = sum_k rho(a_h(k), a_h(k+1)).
struct ChainCertificate {
    bool holds = false;
    std::vector<std::size_t> order;  // witness permutation when holds
    double residual = 0.0;           // best |end distance - chain sum| seen
};

/// Tries the order induced by sort_key (and its reverse) when a key is
/// given; otherwise tries every permutation for up to 8 points. Points must
/// be pairwise distinct.
ChainCertificate one_dimensionality_certificate(
    const std::function<double(const Point&, const Point&)>& metric,
    const std::vector<Point>& points,
    const std::function<double(const Point&)>& sort_key = nullptr, double tol = 1e-9);

}  // namespace haar
