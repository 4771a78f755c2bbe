#pragma once

#include <cmath>

#include "haar/errors.hpp"

namespace haar {

/// First-order dual number a + b*eps with eps^2 = 0. Evaluating an
/// expression on Dual{x, 1} yields the exact forward-mode derivative in
/// .d, with no finite-difference truncation error.
struct Dual {
    double v = 0.0;
    double d = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value) {}
    constexpr Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }

inline Dual operator/(Dual a, Dual b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

inline Dual exp(Dual a) {
    const double e = std::exp(a.v);
    return {e, a.d * e};
}

inline Dual log(Dual a) { return {std::log(a.v), a.d / a.v}; }

inline Dual sin(Dual a) { return {std::sin(a.v), a.d * std::cos(a.v)}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -a.d * std::sin(a.v)}; }

inline Dual tan(Dual a) {
    const double t = std::tan(a.v);
    return {t, a.d * (1.0 + t * t)};
}

inline Dual atan(Dual a) { return {std::atan(a.v), a.d / (1.0 + a.v * a.v)}; }

inline Dual sqrt(Dual a) {
    const double r = std::sqrt(a.v);
    return {r, a.d / (2.0 * r)};
}

inline Dual abs(Dual a) {
    if (a.v == 0.0 && a.d != 0.0)
        throw DomainError("abs is not differentiable at 0");
    return a.v < 0.0 ? Dual{-a.v, -a.d} : Dual{a.v, a.d};
}

inline Dual pow(Dual a, Dual b) {
    if (b.d == 0.0) {
        // Constant exponent: d(a^b) = b*a^(b-1)*da, valid wherever pow is.
        const double p = std::pow(a.v, b.v);
        const double dp = (a.d == 0.0) ? 0.0 : b.v * std::pow(a.v, b.v - 1.0) * a.d;
        return {p, dp};
    }
    if (a.v <= 0.0)
        throw DomainError("pow with varying exponent needs a positive base");
    const double p = std::pow(a.v, b.v);
    return {p, p * (b.d * std::log(a.v) + b.v * a.d / a.v)};
}

}  // namespace haar
