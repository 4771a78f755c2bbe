#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace haar {

/// Expression text could not be parsed. Carries the byte offset of the
/// first offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Evaluation left the mathematical domain: ln of a non-positive number,
/// division by zero, tan at a pole, non-finite result.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A named parameter was referenced but not bound at evaluation time.
class UnboundParameterError : public std::runtime_error {
public:
    explicit UnboundParameterError(const std::string& name)
        : std::runtime_error("unbound parameter '" + name + "'"), name_(name) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// A construction precondition failed (bad carrier point, dimension
/// mismatch, non-monotone bijection, ...).
class ConstructionError : public std::runtime_error {
public:
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace haar
