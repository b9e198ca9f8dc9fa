#pragma once

#include <stdexcept>
#include <string>

namespace opineq {

/// Input lies outside the mathematical domain of an operation
/// (non-PD operand, log of a non-positive eigenvalue, h <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller misuse: bad parameter range, dimension mismatch, malformed config.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An inequality hypothesis (A <= B, window, unital map, unit trace) does not hold.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Iterative routine failed to converge within its cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace opineq
