#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace haar {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Raised when the evaluation budget runs out before the requested
/// tolerance is met. Carries the partial estimate.
class QuadratureFailure : public std::runtime_error {
public:
    QuadratureFailure(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial) {}

    const QuadratureResult& partial() const { return partial_; }

private:
    QuadratureResult partial_;
};

inline constexpr std::size_t kDefaultQuadBudget = 1'000'000;

/// Integrate f over (a, b) to absolute tolerance abs_tol using
/// double-exponential substitutions: tanh-sinh on finite intervals
/// (robust to endpoint singularities), exp-sinh on half-lines, sinh-sinh
/// on the full line. Either endpoint may be infinite, a < b.
///
/// Integrand evaluations that throw DomainError are treated as landing on
/// a removable endpoint defect and contribute zero.
QuadratureResult integrate_de(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, std::size_t max_evals = kDefaultQuadBudget);

/// Convenience wrapper: returns the value, throws QuadratureFailure if the
/// budget is exhausted before convergence.
double quad(const std::function<double(double)>& f, double a, double b, double abs_tol,
            std::size_t max_evals = kDefaultQuadBudget);

}  // namespace haar
