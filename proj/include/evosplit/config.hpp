#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evosplit/analysis.hpp"
#include "evosplit/splitting.hpp"

namespace evosplit {

/**
 * Flat key=value store. Grammar, one directive per line:
 *
 *   key = value
 *
 * Blank lines and lines whose first non-space character is '#' are ignored.
 * Keys and values are trimmed; values may contain spaces and commas. Typed
 * getters throw ConfigError naming the offending key.
 */
class KeyValueConfig {
 public:
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::uint64_t get_uint64(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  /// Keys never read through a getter; used to reject unknown settings.
  std::vector<std::string> unread_keys() const;

  const std::map<std::string, std::string>& raw() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> read_;
};

KeyValueConfig parse_config_text(const std::string& text, const std::string& origin);
KeyValueConfig parse_config_file(const std::filesystem::path& path);

/// How cmd_solve advances the solution.
enum class SolveScheme { Sequential, Strang, Weighted, Reference };

/// Synthetic error series for exercising the fit path without a solver run.
enum class SyntheticSeries { None, Quadratic, Cubic };

/// Structured, validated experiment settings shared by all subcommands.
struct ExperimentConfig {
  // Problem.
  std::string potential_tag = "t-500x2";
  std::string u0_tag = "gaussian";
  double x_min = 0.0;
  double x_max = 1.0;
  int grid_points = 201;

  // Scheme.
  SolveScheme scheme = SolveScheme::Sequential;
  double theta = 0.5;
  bool swap_subflows = false;

  // Time interval and resolution. Exactly one of n_steps / tau_list may be
  // set; which one is required depends on the subcommand.
  double t_start = 0.0;
  double t_end = 1e-2;
  std::optional<int> n_steps;
  std::vector<double> tau_list;

  // Measurement.
  NormKind norm = NormKind::DiscreteL2;
  int ref_refine = 1;
  SyntheticSeries synthetic = SyntheticSeries::None;

  // Snapshots (cmd_solve).
  std::vector<double> snapshot_times = {0.0, 1e-3, 5e-3, 1e-2};

  // Spatial sweep (cmd_sweep). The step counts reach far enough that the
  // temporal error at the largest n sits below the spatial error of every
  // coarse space in the list; that keeps the table monotone in both
  // directions.
  std::vector<int> sweep_m_list = {11, 21, 26, 51, 101};
  std::vector<int> sweep_n_list = {2, 4, 8, 16, 32, 64, 128, 256};
  int sweep_ref_steps = 2048;

  // Matrix rate check (cmd_oracle).
  int oracle_dim = 8;
  int oracle_instances = 20;
  double oracle_alpha = 0.5;
  double oracle_t = 1.0;
  std::vector<int> oracle_n_list = {8, 16, 32, 64, 128};
  int oracle_vectors = 100;
  bool oracle_commuting = false;

  // Misc.
  std::uint64_t seed = 42;
  std::string out_csv;
  std::string out_plot;
};

/// Built-in configuration presets; throws ConfigError for unknown names.
/// Available: paper-8.3, paper-fig1, manufactured-quadratic, oracle-commuting.
KeyValueConfig builtin_preset(const std::string& name);

/// Names of the available presets.
std::vector<std::string> preset_names();

/// Merge (preset, file, overrides) in that order and validate every key.
/// Unknown keys raise ConfigError naming them.
ExperimentConfig build_experiment_config(const KeyValueConfig& merged);

/// Later sources win key-by-key.
KeyValueConfig merge_configs(const std::vector<KeyValueConfig>& sources);

}  // namespace evosplit
