#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "haar/dual.hpp"
#include "haar/errors.hpp"

namespace haar {

/// Late-bound named constants (the paper's formulas need only `c`, but any
/// identifier other than `x` and the function names is accepted).
using Params = std::map<std::string, double>;

namespace detail {
struct Node;
}

/// Immutable parsed closed-form real expression in one variable `x`.
///
/// Grammar (documented in the README):
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | power
///   power  := atom ("^" factor)?
///   atom   := number | ident | ident "(" expr ")" | "(" expr ")"
///
/// `^` is right-associative and binds tighter than unary minus, so
/// "-x^2" means -(x^2). Functions: exp, ln, tan, atan, sin, cos, sqrt, abs.
class Expr {
public:
    Expr() = default;

    static Expr parse(std::string_view text);

    /// IEEE-double evaluation at x. Throws DomainError if the point is
    /// outside the expression's domain or the result is not finite;
    /// throws UnboundParameterError for free parameters missing in params.
    double eval(double x, const Params& params = {}) const;

    /// Exact forward-mode (dual-number) derivative at x.
    double derivative_at(double x, const Params& params = {}) const;

    /// Printable form; parse(str()) yields a structurally equal tree.
    std::string str() const;

    bool same_structure(const Expr& other) const;

    bool empty() const { return root_ == nullptr; }

private:
    explicit Expr(std::shared_ptr<const detail::Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const detail::Node> root_;
};

}  // namespace haar
