#pragma once

#include <stdexcept>
#include <string>

namespace degwave {

/// Raised when a parameter lies outside the mathematical domain of an operation
/// (alpha outside (0,2), reversed intervals, a outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised for problem set-ups that are well formed but cannot be run as asked
/// (CFL violation, unresolved epsilon neighbourhood, incompatible catalog entry).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a call is missing an argument it needs (e.g. G(0) without a trace).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Internal numerical failure, e.g. a zero pivot in a tridiagonal solve.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace degwave
