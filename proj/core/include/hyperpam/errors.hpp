#pragma once

#include <stdexcept>
#include <string>

namespace hyperpam {

/// Argument outside the mathematical domain of a function (s <= 0, x < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two objects that must share (n, K) do not.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A heat-kernel or kernel mode requested where it is not available.
class ModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A defining integral diverges at the requested arguments.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature could not meet its tolerance within the subdivision budget.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (Dalang violation, p < 2, bad exponents, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hyperpam
