#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace cqnp {

/// Bad input to an operation (empty field, inconsistent grid, invalid parameter).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The local density left the region where the transverse width is real
/// and positive. `location()` holds the axial coordinate when known.
class CollapseError : public std::runtime_error {
 public:
  explicit CollapseError(const std::string& what, std::optional<double> x = std::nullopt)
      : std::runtime_error(what), location_(x) {}

  std::optional<double> location() const noexcept { return location_; }

 private:
  std::optional<double> location_;
};

/// Norm, energy, or field samples became non-finite during propagation.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An outer fixed-point iteration did not settle within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or schema-violating run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading a config or writing an artifact failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cqnp
