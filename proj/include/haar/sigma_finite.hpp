#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "haar/groups.hpp"
#include "haar/interval.hpp"
#include "haar/measure.hpp"
#include "haar/transport.hpp"

namespace haar {

/// A countable partition of a 1-D carrier into finite-positive-mass pieces,
/// realized lazily by index k = 1, 2, ... and truncated where the series
/// weight 2^-k drops below 1e-12 (K = 40).
struct Partition {
    std::function<Interval(int)> part;  // k >= 1
    int truncation = 40;

    /// Unit intervals [m, m+1) with m enumerated center-outward
    /// 0, 1, -1, 2, -2, ...
    static Partition unit_center_outward();
};

/// mu1(Y) = sum_k mu(Y n Y_k) / (2^k mu(Y_k)): the probability
/// normalization of a sigma-finite measure, with the realized parts, their
/// source masses, and CDF/quantile machinery kept alongside.
struct NormalizedMeasure {
    MeasureSpec spec;                // the probability measure (density form)
    MeasureSpec source;              // the input sigma-finite measure
    std::vector<Interval> parts;     // realized parts, part k = parts[k-1]
    std::vector<double> part_mass;   // source masses mu(Y_k)
    double tail_bound = 0.0;         // sum_{k > K} 2^-k
    Interval coverage{0.0, 0.0};     // hull of the realized parts

    double cdf(double x) const;
    double quantile(double u) const;

    /// Series evaluation of mu1(Y); the independent route against
    /// integrate(spec, Y, tol).
    double mass_series(const IntervalSet& s, double tol) const;
};

/// Theorem 3.2 normalization step. Throws ConstructionError when a realized
/// part has zero or non-finite source mass.
NormalizedMeasure normalize_sigma_finite(const MeasureSpec& m, const Partition& parts);

/// mu*(X) = sum_k 2^k lambda2(X2_k) mu1(X n phi^-1(X2_k)) as a density
/// measure: the density is 2^k(phi(x)) * lambda2(X2_k(phi(x))) * p1(x).
/// boundaries maps base-part edges into the source carrier.
MeasureSpec mu_star_measure(const NormalizedMeasure& mu1, const NormalizedMeasure& base,
                            const std::vector<double>& boundaries,
                            const std::vector<int>& boundary_part);

/// The same mass by direct series evaluation (finitely many nonzero terms
/// for bounded sets).
double mu_star_mass(const NormalizedMeasure& mu1, const NormalizedMeasure& base,
                    const std::function<double(double)>& phi_inv, const IntervalSet& s,
                    double tol);

/// The full Theorem 3.2 pipeline: normalize mu and Lebesgue, connect them
/// by the CDF isomorphism phi = Q2 o F1, transport (R,+) through phi^-1,
/// and equip the result with the invariant sigma-finite measure mu*.
class SigmaFiniteHaarization {
public:
    SigmaFiniteHaarization(MeasureSpec m, const Partition& parts, const Partition& base_parts);

    double phi(double x) const;      // source carrier -> base carrier (R)
    double phi_inv(double y) const;

    const NormalizedMeasure& mu1() const { return mu1_; }
    const NormalizedMeasure& mu2() const { return mu2_; }
    const GroupSpec& group() const { return group_; }
    const MeasureSpec& mu_star() const { return mu_star_; }

    double mu_star_series(const IntervalSet& s, double tol) const;

    IntervalSet translate(double g1, double g2, const IntervalSet& s) const;
    SetTranslator translator() const;

    /// Sampled equivalence proxy: mu* and mu vanish on the same points.
    /// Returns the number of sign disagreements over a deterministic grid.
    int equivalence_disagreements(int samples) const;

private:
    struct Core;
    std::shared_ptr<const Core> core_;
    NormalizedMeasure mu1_, mu2_;
    GroupSpec group_;
    MeasureSpec mu_star_;
};

SigmaFiniteHaarization haarize_sigma_finite(const MeasureSpec& m, const Partition& parts,
                                            const Partition& base_parts);

}  // namespace haar
