#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evosplit/analysis.hpp"
#include "evosplit/config.hpp"

namespace evosplit {

/**
 * Solve the configured problem over [t_start, t_end] with time.steps uniform
 * steps and emit the snapshots at snapshot.times as gnuplot-style blocks of
 * "x u" lines (one blank line between blocks) to output.plot. Every snapshot
 * time must land on a step boundary.
 */
struct SolveResult {
  std::vector<State> snapshots;
  std::filesystem::path plot_path;
  std::string stdout_text;
};
SolveResult cmd_solve(const ExperimentConfig& config);

/**
 * Local-error sweep over time.tau_list followed by a log-log order fit of
 * the relative error (local convention). Writes "tau,error,rel_error" rows
 * to output.csv and "slope,intercept,order,residual" to a sibling summary
 * file (suffix ".summary.csv").
 */
struct OrderResult {
  ErrorSeries series;
  OrderFit fit;
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  std::string stdout_text;
};
OrderResult cmd_order(const ExperimentConfig& config);

/**
 * Splitting rate check over seeded autonomous matrix instances. Writes
 * per-point errors ("instance,n,seq_error,strang_error") to output.csv and a
 * per-instance summary ("instance,seq_order,strang_order,best_c,exact",
 * aggregate row with instance = -1) to the sibling summary file.
 */
struct OracleResult {
  std::vector<RateCheckReport> reports;
  double aggregate_seq_order = 0.0;
  double aggregate_strang_order = 0.0;
  bool all_exact = false;
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  std::string stdout_text;
};
OracleResult cmd_oracle(const ExperimentConfig& config);

/**
 * Error table of the splitting-through-coarse-space run against the unsplit
 * reference on the fine grid, for every (m, n) in the configured lists.
 * Writes one row per m ("m,<n1>,<n2>,...") to output.csv.
 *
 * The summary file ("spacing_slope,intercept,residual,points") carries the
 * spatial log-log fit of the gap between the coarse-space run and the
 * fine-grid splitting run with the same (largest) step count. That gap
 * isolates the spatial error; fitting the table column instead would be
 * contaminated by the temporal error floor. Coarse sizes equal to the fine
 * size contribute a bitwise-zero gap and are excluded from the fit. The table
 * is written before the fit is attempted, so a failed fit (fewer than four
 * usable gap points) still leaves the table on disk.
 */
struct SweepResult {
  std::vector<int> m_list;
  std::vector<int> n_list;
  std::vector<std::vector<double>> errors;  // errors[mi][ni]
  OrderFit spatial_fit;
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  std::string stdout_text;
};
SweepResult cmd_sweep(const ExperimentConfig& config);

/// Map an exception to the documented process exit code (config errors 1,
/// numerical failures 2).
int exit_code_for_current_exception();

}  // namespace evosplit
