#include "evosplit/config.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <fstream>
#include <sstream>

#include "evosplit/errors.hpp"

namespace evosplit {

namespace {

std::string trim(const std::string& s) {
  std::size_t first = 0;
  while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  std::size_t last = s.size();
  while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
  return s.substr(first, last - first);
}

std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(trim(part));
  return parts;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + text + "' is not a number");
  }
  if (consumed != text.size()) {
    throw ConfigError("config key '" + key + "': '" + text + "' is not a number");
  }
  return value;
}

long long parse_integer(const std::string& key, const std::string& text) {
  std::size_t consumed = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + text + "' is not an integer");
  }
  if (consumed != text.size()) {
    throw ConfigError("config key '" + key + "': '" + text + "' is not an integer");
  }
  return value;
}

}  // namespace

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("missing config key '" + key + "'");
  }
  read_[key] = true;
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  return parse_double(key, get_string(key));
}

int KeyValueConfig::get_int(const std::string& key) const {
  const long long v = parse_integer(key, get_string(key));
  if (v < INT_MIN || v > INT_MAX) {
    throw ConfigError("config key '" + key + "': value out of range");
  }
  return static_cast<int>(v);
}

std::uint64_t KeyValueConfig::get_uint64(const std::string& key) const {
  const long long v = parse_integer(key, get_string(key));
  if (v < 0) {
    throw ConfigError("config key '" + key + "': value must be nonnegative");
  }
  return static_cast<std::uint64_t>(v);
}

bool KeyValueConfig::get_bool(const std::string& key) const {
  const std::string v = get_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& part : split_commas(get_string(key))) {
    out.push_back(parse_double(key, part));
  }
  return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (const std::string& part : split_commas(get_string(key))) {
    const long long v = parse_integer(key, part);
    if (v < INT_MIN || v > INT_MAX) {
      throw ConfigError("config key '" + key + "': value out of range");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<std::string> KeyValueConfig::unread_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    (void)value;
    auto it = read_.find(key);
    if (it == read_.end() || !it->second) out.push_back(key);
  }
  return out;
}

KeyValueConfig parse_config_text(const std::string& text, const std::string& origin) {
  KeyValueConfig config;
  std::stringstream ss(text);
  std::string line;
  int line_number = 0;
  while (std::getline(ss, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_number) +
                        ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_number) + ": empty key");
    }
    config.set(key, value);
  }
  return config;
}

KeyValueConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

KeyValueConfig merge_configs(const std::vector<KeyValueConfig>& sources) {
  KeyValueConfig merged;
  for (const KeyValueConfig& source : sources) {
    for (const auto& [key, value] : source.raw()) merged.set(key, value);
  }
  return merged;
}

KeyValueConfig builtin_preset(const std::string& name) {
  KeyValueConfig preset;
  if (name == "paper-8.3") {
    preset.set("problem.potential", "t-500x2");
    preset.set("problem.u0", "gaussian");
    preset.set("problem.x_min", "0");
    preset.set("problem.x_max", "1");
    preset.set("problem.grid_points", "201");
    preset.set("scheme.kind", "sequential");
    preset.set("time.start", "0");
    preset.set("time.end", "1e-2");
    preset.set("time.tau_list", "2e-3,1e-3,5e-4,2.5e-4,1.25e-4");
    preset.set("norm", "l2");
  } else if (name == "paper-fig1") {
    preset.set("problem.potential", "t-500x2");
    preset.set("problem.u0", "gaussian");
    preset.set("problem.x_min", "0");
    preset.set("problem.x_max", "1");
    preset.set("problem.grid_points", "201");
    preset.set("scheme.kind", "reference");
    preset.set("time.start", "0");
    preset.set("time.end", "1e-2");
    preset.set("time.steps", "100");
    preset.set("snapshot.times", "0,1e-3,5e-3,1e-2");
  } else if (name == "manufactured-quadratic") {
    preset.set("order.synthetic", "quadratic");
    preset.set("time.tau_list", "1e-1,3e-2,1e-2,3e-3,1e-3");
  } else if (name == "oracle-commuting") {
    preset.set("oracle.commuting", "true");
  } else {
    throw ConfigError("unknown preset '" + name + "'; available: paper-8.3, paper-fig1, "
                      "manufactured-quadratic, oracle-commuting");
  }
  return preset;
}

std::vector<std::string> preset_names() {
  return {"paper-8.3", "paper-fig1", "manufactured-quadratic", "oracle-commuting"};
}

ExperimentConfig build_experiment_config(const KeyValueConfig& merged) {
  ExperimentConfig config;

  if (merged.has("problem.potential")) config.potential_tag = merged.get_string("problem.potential");
  if (merged.has("problem.u0")) config.u0_tag = merged.get_string("problem.u0");
  if (merged.has("problem.x_min")) config.x_min = merged.get_double("problem.x_min");
  if (merged.has("problem.x_max")) config.x_max = merged.get_double("problem.x_max");
  if (merged.has("problem.grid_points")) config.grid_points = merged.get_int("problem.grid_points");

  if (merged.has("scheme.kind")) {
    const std::string kind = merged.get_string("scheme.kind");
    if (kind == "sequential") config.scheme = SolveScheme::Sequential;
    else if (kind == "strang") config.scheme = SolveScheme::Strang;
    else if (kind == "weighted") config.scheme = SolveScheme::Weighted;
    else if (kind == "reference") config.scheme = SolveScheme::Reference;
    else throw ConfigError("config key 'scheme.kind': unknown scheme '" + kind + "'");
  }
  if (merged.has("scheme.theta")) config.theta = merged.get_double("scheme.theta");
  if (merged.has("scheme.swap_subflows")) {
    config.swap_subflows = merged.get_bool("scheme.swap_subflows");
  }

  if (merged.has("time.start")) config.t_start = merged.get_double("time.start");
  if (merged.has("time.end")) config.t_end = merged.get_double("time.end");
  if (merged.has("time.steps")) config.n_steps = merged.get_int("time.steps");
  if (merged.has("time.tau_list")) config.tau_list = merged.get_double_list("time.tau_list");

  if (merged.has("norm")) {
    const std::string norm = merged.get_string("norm");
    if (norm == "l2") config.norm = NormKind::DiscreteL2;
    else if (norm == "max") config.norm = NormKind::Max;
    else throw ConfigError("config key 'norm': expected 'l2' or 'max', got '" + norm + "'");
  }
  if (merged.has("reference.refine")) config.ref_refine = merged.get_int("reference.refine");
  if (merged.has("order.synthetic")) {
    const std::string synthetic = merged.get_string("order.synthetic");
    if (synthetic == "none") config.synthetic = SyntheticSeries::None;
    else if (synthetic == "quadratic") config.synthetic = SyntheticSeries::Quadratic;
    else if (synthetic == "cubic") config.synthetic = SyntheticSeries::Cubic;
    else throw ConfigError("config key 'order.synthetic': unknown value '" + synthetic + "'");
  }

  if (merged.has("snapshot.times")) {
    config.snapshot_times = merged.get_double_list("snapshot.times");
  }

  if (merged.has("sweep.m_list")) config.sweep_m_list = merged.get_int_list("sweep.m_list");
  if (merged.has("sweep.n_list")) config.sweep_n_list = merged.get_int_list("sweep.n_list");
  if (merged.has("sweep.ref_steps")) config.sweep_ref_steps = merged.get_int("sweep.ref_steps");

  if (merged.has("oracle.dim")) config.oracle_dim = merged.get_int("oracle.dim");
  if (merged.has("oracle.instances")) config.oracle_instances = merged.get_int("oracle.instances");
  if (merged.has("oracle.alpha")) config.oracle_alpha = merged.get_double("oracle.alpha");
  if (merged.has("oracle.t")) config.oracle_t = merged.get_double("oracle.t");
  if (merged.has("oracle.n_list")) config.oracle_n_list = merged.get_int_list("oracle.n_list");
  if (merged.has("oracle.vectors")) config.oracle_vectors = merged.get_int("oracle.vectors");
  if (merged.has("oracle.commuting")) config.oracle_commuting = merged.get_bool("oracle.commuting");

  if (merged.has("seed")) config.seed = merged.get_uint64("seed");
  if (merged.has("output.csv")) config.out_csv = merged.get_string("output.csv");
  if (merged.has("output.plot")) config.out_plot = merged.get_string("output.plot");

  const std::vector<std::string> unknown = merged.unread_keys();
  if (!unknown.empty()) {
    std::string names;
    for (std::size_t i = 0; i < unknown.size(); ++i) {
      if (i > 0) names += ", ";
      names += unknown[i];
    }
    throw ConfigError("unknown config key(s): " + names);
  }

  // Cross-field validation.
  if (!(config.x_min < config.x_max)) {
    throw ConfigError("problem.x_min must be strictly below problem.x_max");
  }
  if (config.grid_points < 3) {
    throw ConfigError("problem.grid_points must be at least 3");
  }
  if (!(config.t_start <= config.t_end)) {
    throw ConfigError("time.start must not exceed time.end");
  }
  if (config.scheme == SolveScheme::Weighted && !(config.theta > 0.0 && config.theta < 1.0)) {
    throw ConfigError("scheme.theta must lie strictly inside (0, 1)");
  }
  if (config.n_steps && !config.tau_list.empty()) {
    throw ConfigError("time.steps and time.tau_list are mutually exclusive");
  }
  if (config.n_steps && *config.n_steps < 1) {
    throw ConfigError("time.steps must be at least 1");
  }
  if (config.ref_refine < 1) {
    throw ConfigError("reference.refine must be at least 1");
  }
  for (int m : config.sweep_m_list) {
    if (m < 3) throw ConfigError("sweep.m_list entries must be at least 3");
  }
  for (int n : config.sweep_n_list) {
    if (n < 1) throw ConfigError("sweep.n_list entries must be at least 1");
  }
  if (config.sweep_ref_steps < 1) {
    throw ConfigError("sweep.ref_steps must be at least 1");
  }
  if (config.oracle_dim < 1) throw ConfigError("oracle.dim must be at least 1");
  if (config.oracle_instances < 1) throw ConfigError("oracle.instances must be at least 1");
  if (!(config.oracle_alpha > 0.0 && config.oracle_alpha <= 1.0)) {
    throw ConfigError("oracle.alpha must lie in (0, 1]");
  }
  if (config.oracle_vectors < 1) throw ConfigError("oracle.vectors must be at least 1");

  return config;
}

}  // namespace evosplit
