#include "cqnp/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cqnp/error.hpp"

namespace cqnp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const ConfigKey* find_key(std::string_view name) {
  for (const ConfigKey& key : config_schema()) {
    if (key.name == name) return &key;
  }
  return nullptr;
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + std::string(v) + "'");
  }
  if (!std::isfinite(out)) throw ConfigError("key '" + std::string(key) + "' must be finite");
  return out;
}

std::size_t parse_count(std::string_view key, std::string_view v) {
  if (!v.empty() && v.front() == '-') {
    throw ConfigError("key '" + std::string(key) + "' must be a non-negative integer, got '" + std::string(v) + "'");
  }
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = v.find(',');
    const std::string_view item = trim(v.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

void check_value(const ConfigKey& key, std::string_view value) {
  switch (key.type) {
    case ValueType::Real: parse_real(key.name, value); break;
    case ValueType::Count: parse_count(key.name, value); break;
    case ValueType::Text:
    case ValueType::List: break;
  }
}

template <class F>
auto as_config_error(F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::string_view to_string(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::WidthMap: return "width-map";
    case Scenario::WidthCurves: return "width-curves";
    case Scenario::GroundState: return "ground-state";
    case Scenario::Compare: return "compare";
    case Scenario::MatchScan: return "match-scan";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view name) noexcept {
  for (Scenario s : {Scenario::WidthMap, Scenario::WidthCurves, Scenario::GroundState, Scenario::Compare,
                     Scenario::MatchScan}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(ModelId model) noexcept {
  switch (model) {
    case ModelId::NPGeneral: return "np";
    case ModelId::NPSECubic: return "npse-cubic";
    case ModelId::CQPolynomial: return "cq-poly";
    case ModelId::GPE3D: return "gpe3d";
  }
  return "?";
}

std::optional<ModelId> parse_model(std::string_view name) noexcept {
  for (ModelId m : {ModelId::NPGeneral, ModelId::NPSECubic, ModelId::CQPolynomial, ModelId::GPE3D}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = {
      {"scenario", ValueType::Text, "", "optional; must match the subcommand when set"},
      {"output.dir", ValueType::Text, "out", "artifact directory"},
      {"coupling.g3", ValueType::Real, "1", "two-body coupling"},
      {"coupling.g5", ValueType::Real, "1", "three-body coupling"},
      {"coupling.lambda", ValueType::Real, "0.1", "axial trap strength, V(x) = (lambda x)^2/2"},
      {"model", ValueType::Text, "np", "ground-state model: np | npse-cubic | cq-poly | gpe3d"},
      {"compare.models", ValueType::List, "gpe3d, np, cq-poly", "models compared pairwise, in order"},
      {"grid1d.half_width", ValueType::Real, "20", "1D box half-width"},
      {"grid1d.points", ValueType::Count, "513", "1D node count"},
      {"solver1d.dt", ValueType::Real, "0.001", "1D imaginary time step"},
      {"solver1d.max_iters", ValueType::Count, "200000", "1D iteration cap"},
      {"solver1d.mu_tol", ValueType::Real, "1e-9", "1D per-step chemical potential tolerance"},
      {"grid3d.half_width", ValueType::Real, "20", "3D axial half-width"},
      {"grid3d.points", ValueType::Count, "257", "3D axial node count"},
      {"grid3d.transverse_half_width", ValueType::Real, "8", "3D transverse half-width (>= 6)"},
      {"grid3d.transverse_points", ValueType::Count, "65", "3D transverse node count per axis"},
      {"solver3d.dt", ValueType::Real, "0.002", "3D imaginary time step"},
      {"solver3d.max_iters", ValueType::Count, "200000", "3D iteration cap"},
      {"solver3d.mu_tol", ValueType::Real, "1e-8", "3D per-step chemical potential tolerance"},
      {"solver3d.check_interval", ValueType::Count, "10", "steps between 3D convergence checks"},
      {"width_map.a3_min", ValueType::Real, "-2", "lower a3 = g3|phi|^2"},
      {"width_map.a3_max", ValueType::Real, "2", "upper a3"},
      {"width_map.a5_min", ValueType::Real, "-2", "lower a5 = g5|phi|^4"},
      {"width_map.a5_max", ValueType::Real, "2", "upper a5"},
      {"width_map.resolution", ValueType::Count, "401", "samples per axis (>= 2)"},
      {"width_curves.fixed", ValueType::Text, "a5", "argument held fixed: a3 | a5"},
      {"width_curves.value", ValueType::Real, "0.1", "value of the fixed argument"},
      {"width_curves.from", ValueType::Real, "0", "sweep start"},
      {"width_curves.to", ValueType::Real, "1", "sweep end"},
      {"width_curves.points", ValueType::Count, "101", "sweep samples (one row when from == to)"},
      {"match_scan.tol", ValueType::Real, "1e-6", "stop when |g3 change| falls below this"},
      {"match_scan.max_outer", ValueType::Count, "50", "outer iteration cap"},
  };
  return schema;
}

RunConfig::RunConfig() {
  for (const ConfigKey& key : config_schema()) values_.emplace(std::string(key.name), std::string(key.default_value));
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (seen.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    seen.emplace(std::string(key), line_no);
    cfg.set(key, value);
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  const std::string_view body = trim(content);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json manifest;
    try {
      manifest = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
    if (!manifest.contains("config") || !manifest["config"].is_object()) {
      throw ConfigError("manifest has no 'config' object");
    }
    RunConfig cfg;
    for (const auto& [key, value] : manifest["config"].items()) {
      if (!value.is_string()) throw ConfigError("manifest config value for '" + key + "' must be a string");
      cfg.set(key, value.get<std::string>());
    }
    return cfg;
  }
  return parse(content);
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const ConfigKey* schema_key = find_key(key);
  if (schema_key == nullptr) throw ConfigError("unknown config key '" + std::string(key) + "'");
  check_value(*schema_key, value);
  values_.find(key)->second = std::string(value);
}

double RunConfig::real(std::string_view key) const { return parse_real(key, text(key)); }

std::size_t RunConfig::count(std::string_view key) const { return parse_count(key, text(key)); }

const std::string& RunConfig::text(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  return it->second;
}

std::vector<std::string> RunConfig::list(std::string_view key) const { return split_list(text(key)); }

std::string RunConfig::to_text() const {
  std::string out;
  for (const ConfigKey& key : config_schema()) {
    out += std::string(key.name) + " = " + text(key.name) + "\n";
  }
  return out;
}

std::optional<Scenario> RunConfig::scenario() const {
  const std::string& name = text("scenario");
  if (name.empty()) return std::nullopt;
  const auto s = parse_scenario(name);
  if (!s) throw ConfigError("unknown scenario '" + name + "'");
  return s;
}

CouplingParams RunConfig::couplings() const {
  CouplingParams c{real("coupling.g3"), real("coupling.g5"), real("coupling.lambda")};
  as_config_error([&] { c.validate(); return 0; });
  return c;
}

SolverConfig1D RunConfig::solver1d(ModelKind kind) const {
  return as_config_error([&] {
    const CouplingParams c = couplings();
    SolverConfig1D cfg;
    cfg.grid = Grid1D(real("grid1d.half_width"), count("grid1d.points"));
    cfg.dt = real("solver1d.dt");
    cfg.max_iters = count("solver1d.max_iters");
    cfg.mu_tol = real("solver1d.mu_tol");
    cfg.model = NonlinearModel(kind, c.g3, c.g5);
    cfg.lambda = c.lambda;
    cfg.validate();
    return cfg;
  });
}

SolverConfig3D RunConfig::solver3d() const {
  return as_config_error([&] {
    SolverConfig3D cfg;
    cfg.grid = Grid3D(Grid1D(real("grid3d.half_width"), count("grid3d.points")),
                      Grid1D(real("grid3d.transverse_half_width"), count("grid3d.transverse_points")));
    cfg.dt = real("solver3d.dt");
    cfg.max_iters = count("solver3d.max_iters");
    cfg.mu_tol = real("solver3d.mu_tol");
    cfg.check_interval = count("solver3d.check_interval");
    cfg.couplings = couplings();
    cfg.validate();
    return cfg;
  });
}

void RunConfig::validate() const {
  for (const ConfigKey& key : config_schema()) check_value(key, text(key.name));
  scenario();
  couplings();

  const auto model = parse_model(text("model"));
  if (!model) throw ConfigError("unknown model '" + text("model") + "'");

  const std::vector<std::string> models = list("compare.models");
  if (models.empty()) throw ConfigError("compare.models must name at least one model");
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (!parse_model(models[i])) throw ConfigError("unknown model '" + models[i] + "' in compare.models");
    for (std::size_t j = 0; j < i; ++j) {
      if (models[i] == models[j]) throw ConfigError("model '" + models[i] + "' listed twice in compare.models");
    }
  }

  solver1d(ModelKind::CQPolynomial);
  solver3d();

  if (count("width_map.resolution") < 2) throw ConfigError("width_map.resolution must be at least 2");
  const std::string& fixed = text("width_curves.fixed");
  if (fixed != "a3" && fixed != "a5") throw ConfigError("width_curves.fixed must be 'a3' or 'a5'");
  if (count("width_curves.points") < 1) throw ConfigError("width_curves.points must be at least 1");
  if (!(real("match_scan.tol") > 0.0)) throw ConfigError("match_scan.tol must be positive");
  if (count("match_scan.max_outer") < 1) throw ConfigError("match_scan.max_outer must be at least 1");
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace cqnp
