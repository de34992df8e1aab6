#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsmfg {

/// Precondition violations on model and analysis inputs (bad state index,
/// fraction outside [0,1], missing potential, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent run configuration. Raised before any solve.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time march failed: CFL violation, NaN, or a broken sign condition.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Raised when a field cannot be inverted because it is not strictly monotone.
class NotInvertibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tsmfg
