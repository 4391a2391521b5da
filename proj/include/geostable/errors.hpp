#pragma once

#include <stdexcept>
#include <string>

namespace geostable {

/// Argument outside the mathematical domain of an operation
/// (inadmissible stable parameters, pole of Γ, x ≤ 0 for a subordinator density, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A series or quadrature did not reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectral grid too coarse or too narrow for the characteristic function.
class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected run configuration. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace geostable
