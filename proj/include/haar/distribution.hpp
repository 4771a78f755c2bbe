#pragma once

#include <functional>
#include <string>

#include "haar/groups.hpp"
#include "haar/interval.hpp"

namespace haar {

/// A diffused probability distribution on an interval support: density,
/// CDF and quantile, with the CDF strictly increasing on the support.
struct Distribution {
    std::string name;
    Interval support{-kInf, kInf};
    /// True when the left support endpoint is an actual point of the
    /// support with cdf == 0 there (uniform, exponential, beta). Such
    /// distributions have cdf image [0,1) already and need no
    /// Hilbert-hotel correction.
    bool closed_left = false;

    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    /// Closed-form inverse CDF when one exists; otherwise empty and
    /// quantile() inverts numerically.
    std::function<double(double)> quantile_closed;

    std::string pdf_desc;

    /// x with |cdf(x) - u| <= 1e-12 for u in (0,1), or the nearest
    /// representable x when the density is singular enough that one x-ulp
    /// carries more cdf mass than the tolerance. Throws DomainError for u
    /// outside (0,1), ConstructionError on nonconvergence.
    double quantile(double u) const;

    /// Measure view of the distribution (density w.r.t. length).
    MeasureSpec as_measure() const;
};

/// Numeric inversion: bracketing bisection with a Newton polish, stopping
/// at |cdf(x) - u| <= tol or when the bracket collapses to one ulp.
double numeric_quantile(const std::function<double(double)>& cdf,
                        const std::function<double(double)>& pdf, const Interval& support,
                        double u, double tol = 1e-12);

Distribution uniform_01();
Distribution exponential_dist(double rate);
Distribution normal_dist(double mean, double sd);
Distribution cauchy_dist(double location, double scale);
Distribution beta_dist(double alpha, double beta);

/// Parses CLI selectors: "uniform", "exponential:<rate>",
/// "normal:<mean>,<sd>", "cauchy:<loc>,<scale>", "beta:<a>,<b>".
Distribution parse_distribution(const std::string& selector);

}  // namespace haar
