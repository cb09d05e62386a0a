#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqnp/nonlinearity.hpp"
#include "cqnp/solver1d.hpp"
#include "cqnp/solver3d.hpp"
#include "cqnp/width.hpp"

namespace cqnp {

enum class Scenario { WidthMap, WidthCurves, GroundState, Compare, MatchScan };

std::string_view to_string(Scenario scenario) noexcept;
std::optional<Scenario> parse_scenario(std::string_view name) noexcept;

/// Models selectable from a config: the three 1D equations and the full 3D solver.
enum class ModelId { NPGeneral, NPSECubic, CQPolynomial, GPE3D };

std::string_view to_string(ModelId model) noexcept;
std::optional<ModelId> parse_model(std::string_view name) noexcept;

enum class ValueType { Real, Count, Text, List };

struct ConfigKey {
  std::string_view name;
  ValueType type;
  std::string_view default_value;
  std::string_view help;
};

/// Every accepted key with its default. Anything else is rejected.
const std::vector<ConfigKey>& config_schema();

/// Flat dotted-key configuration, e.g. `coupling.g3 = 1.0`.
///
/// Parsing is strict: unknown keys, duplicates, malformed numbers, non-finite
/// values and negative counts all raise ConfigError. Every key in the schema
/// always has a value; missing keys take their defaults.
class RunConfig {
 public:
  RunConfig();

  /// Parses `key = value` lines; `#` starts a comment.
  static RunConfig parse(std::string_view text);
  /// Reads a config file, or the `config` object of a JSON run manifest.
  static RunConfig load(const std::filesystem::path& path);

  /// Overrides one key with schema checking.
  void set(std::string_view key, std::string_view value);

  double real(std::string_view key) const;
  std::size_t count(std::string_view key) const;
  const std::string& text(std::string_view key) const;
  std::vector<std::string> list(std::string_view key) const;

  /// Canonical text with every key, suitable for re-running.
  std::string to_text() const;
  const std::map<std::string, std::string, std::less<>>& values() const noexcept { return values_; }

  std::optional<Scenario> scenario() const;
  std::filesystem::path output_dir() const { return text("output.dir"); }

  CouplingParams couplings() const;
  /// 1D solver settings for `kind`, taking couplings from this config.
  SolverConfig1D solver1d(ModelKind kind) const;
  SolverConfig3D solver3d() const;

  /// Builds every derived object once so schema problems surface before any
  /// output is written. Throws ConfigError.
  void validate() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

/// Formats a double with 17 significant digits.
std::string format_real(double value);

}  // namespace cqnp
