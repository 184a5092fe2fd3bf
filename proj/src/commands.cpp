#include "evosplit/commands.hpp"

#include <cmath>
#include <sstream>

#include "evosplit/approximation.hpp"
#include "evosplit/csv.hpp"
#include "evosplit/errors.hpp"
#include "evosplit/presets.hpp"
#include "evosplit/propagators.hpp"

namespace evosplit {

namespace {

std::filesystem::path summary_path_for(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension();
  p += ".summary.csv";
  return p;
}

std::filesystem::path require_out(const std::string& out, const char* key) {
  if (out.empty()) {
    throw ConfigError(std::string("missing required output path '") + key + "'");
  }
  return std::filesystem::path(out);
}

SplitRun<State> run_solve_scheme(const ExperimentConfig& config, const Grid1D& grid,
                                 const Potential& V, const State& u0, int n) {
  const double s = config.t_start;
  const double t = config.t_end;
  switch (config.scheme) {
    case SolveScheme::Sequential:
      return run_pde_sequential(grid, V, u0, s, t, n, true, config.swap_subflows);
    case SolveScheme::Strang: {
      auto diffusion = make_cn_diffusion_flow(grid);
      auto potential = make_potential_flow(grid, V);
      if (config.swap_subflows) {
        return run_frozen_strang(potential, diffusion, s, t, n, u0, true);
      }
      return run_frozen_strang(diffusion, potential, s, t, n, u0, true);
    }
    case SolveScheme::Weighted: {
      auto diffusion = make_cn_diffusion_flow(grid);
      auto potential = make_potential_flow(grid, V);
      if (config.swap_subflows) {
        return run_frozen_weighted(potential, diffusion, config.theta, s, t, n, u0, true);
      }
      return run_frozen_weighted(diffusion, potential, config.theta, s, t, n, u0, true);
    }
    case SolveScheme::Reference:
      return run_pde_reference(grid, V, u0, s, t, n, true);
  }
  throw ConfigError("unknown scheme");
}

}  // namespace

SolveResult cmd_solve(const ExperimentConfig& config) {
  if (!config.n_steps) {
    throw ConfigError("cmd_solve requires time.steps");
  }
  const int n = *config.n_steps;
  const Grid1D grid = make_grid(config.x_min, config.x_max, config.grid_points);
  const Potential V = make_builtin_potential(config.potential_tag);
  const State u0 = make_state(grid, make_builtin_profile(config.u0_tag), config.t_start);

  if (config.snapshot_times.empty()) {
    throw ConfigError("cmd_solve: snapshot.times must not be empty");
  }
  const double horizon = config.t_end - config.t_start;
  if (!(horizon > 0.0)) {
    throw ConfigError("cmd_solve: time.end must exceed time.start");
  }
  const double tau = horizon / static_cast<double>(n);

  // Every snapshot time must land on a macro step boundary.
  std::vector<int> indices;
  for (double target : config.snapshot_times) {
    const double exact = (target - config.t_start) / tau;
    const double rounded = std::round(exact);
    if (std::abs(exact - rounded) > 1e-9 || rounded < 0.0 ||
        rounded > static_cast<double>(n)) {
      std::ostringstream msg;
      msg << "snapshot time " << format_g17(target)
          << " does not land on a step boundary (tau = " << format_g17(tau) << ")";
      throw ConfigError(msg.str());
    }
    indices.push_back(static_cast<int>(rounded));
  }

  const SplitRun<State> run = run_solve_scheme(config, grid, V, u0, n);

  SolveResult result;
  std::string plot;
  std::string stdout_text;
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const State& snapshot = run.trajectory[static_cast<std::size_t>(indices[b])];
    result.snapshots.push_back(snapshot);
    if (b > 0) plot += "\n";
    for (int i = 0; i < grid.num_points; ++i) {
      plot += format_g17(grid.point(i));
      plot += ' ';
      plot += format_g17(snapshot.values[static_cast<std::size_t>(i)]);
      plot += '\n';
    }
    stdout_text += "block " + std::to_string(b) + ": t = " +
                   format_g17(config.snapshot_times[b]) + "\n";
  }

  result.plot_path = require_out(config.out_plot, "output.plot");
  write_text_file(result.plot_path, plot);
  result.stdout_text = stdout_text;
  return result;
}

OrderResult cmd_order(const ExperimentConfig& config) {
  if (config.tau_list.empty()) {
    throw ConfigError("cmd_order requires time.tau_list");
  }
  if (config.tau_list.size() < 4) {
    throw ConfigError("cmd_order: time.tau_list needs at least 4 entries for the fit, got " +
                      std::to_string(config.tau_list.size()));
  }

  OrderResult result;
  if (config.synthetic != SyntheticSeries::None) {
    // Synthetic data path: error = tau^2 or 5 tau^3, no solver involved.
    result.series.norm_kind = config.norm;
    for (double tau : config.tau_list) {
      const double err = (config.synthetic == SyntheticSeries::Quadratic)
                             ? tau * tau
                             : 5.0 * tau * tau * tau;
      result.series.entries.push_back({tau, err, err});
    }
  } else {
    LocalSweepProblem problem;
    problem.grid = make_grid(config.x_min, config.x_max, config.grid_points);
    problem.V = make_builtin_potential(config.potential_tag);
    problem.u0 = make_builtin_profile(config.u0_tag);
    problem.start_time = config.t_start;
    problem.ref_refine = config.ref_refine;
    problem.swap_subflows = config.swap_subflows;
    result.series = local_error_sweep(problem, config.tau_list, config.norm);
  }

  result.fit = fit_order(result.series, FitConvention::Local, FitTarget::Relative);

  std::string csv = "tau,error,rel_error\n";
  for (const auto& entry : result.series.entries) {
    csv += csv_row({entry.tau, entry.error, entry.rel_error});
    csv += '\n';
  }
  std::string summary = "slope,intercept,order,residual\n";
  summary += csv_row({result.fit.slope_a, result.fit.intercept_b,
                      result.fit.estimated_order_p, result.fit.residual_rms});
  summary += '\n';

  result.csv_path = require_out(config.out_csv, "output.csv");
  result.summary_path = summary_path_for(result.csv_path);
  write_text_file(result.csv_path, csv);
  write_text_file(result.summary_path, summary);
  result.stdout_text = "slope = " + format_g17(result.fit.slope_a) +
                       ", intercept = " + format_g17(result.fit.intercept_b) +
                       ", order = " + format_g17(result.fit.estimated_order_p) +
                       ", residual = " + format_g17(result.fit.residual_rms) + "\n";
  return result;
}

OracleResult cmd_oracle(const ExperimentConfig& config) {
  OracleResult result;

  std::string csv = "instance,n,seq_error,strang_error\n";
  std::string summary = "instance,seq_order,strang_order,best_c,exact\n";

  double seq_sum = 0.0;
  double strang_sum = 0.0;
  int fitted = 0;
  bool all_exact = true;

  for (int k = 0; k < config.oracle_instances; ++k) {
    const std::uint64_t instance_seed = config.seed + static_cast<std::uint64_t>(k);
    const MatrixInstance inst =
        config.oracle_commuting
            ? random_commuting_instance(config.oracle_dim, instance_seed)
            : random_negdef_instance(config.oracle_dim, instance_seed);

    RateCheckConfig rate;
    rate.alpha = config.oracle_alpha;
    rate.t = config.oracle_t;
    rate.ns = config.oracle_n_list;
    rate.num_commutator_vectors = config.oracle_vectors;
    rate.seed = instance_seed + 0x9e3779b9ull;
    const RateCheckReport report = splitting_rate_check(inst, rate);

    for (const RatePoint& point : report.points) {
      csv += csv_row({static_cast<double>(k), static_cast<double>(point.n),
                      point.seq_error, point.strang_error});
      csv += '\n';
    }

    const double seq_order = report.seq_fit ? report.seq_fit->estimated_order_p : 0.0;
    const double strang_order =
        report.strang_fit ? report.strang_fit->estimated_order_p : 0.0;
    summary += csv_row({static_cast<double>(k), seq_order, strang_order,
                        report.commutator.best_c, report.exact ? 1.0 : 0.0});
    summary += '\n';

    if (report.exact) {
      // Round-off errors carry no usable order information.
    } else {
      seq_sum += seq_order;
      strang_sum += strang_order;
      ++fitted;
      all_exact = false;
    }
    result.reports.push_back(report);
  }

  result.all_exact = all_exact;
  result.aggregate_seq_order = (fitted > 0) ? seq_sum / fitted : 0.0;
  result.aggregate_strang_order = (fitted > 0) ? strang_sum / fitted : 0.0;
  summary += csv_row({-1.0, result.aggregate_seq_order, result.aggregate_strang_order,
                      0.0, all_exact ? 1.0 : 0.0});
  summary += '\n';

  result.csv_path = require_out(config.out_csv, "output.csv");
  result.summary_path = summary_path_for(result.csv_path);
  write_text_file(result.csv_path, csv);
  write_text_file(result.summary_path, summary);

  if (all_exact) {
    result.stdout_text = "all instances exact (errors at round-off)\n";
  } else {
    result.stdout_text =
        "aggregate sequential order = " + format_g17(result.aggregate_seq_order) +
        ", aggregate strang order = " + format_g17(result.aggregate_strang_order) + "\n";
  }
  return result;
}

SweepResult cmd_sweep(const ExperimentConfig& config) {
  if (config.sweep_m_list.empty() || config.sweep_n_list.empty()) {
    throw ConfigError("cmd_sweep requires sweep.m_list and sweep.n_list");
  }
  const Grid1D fine = make_grid(config.x_min, config.x_max, config.grid_points);
  const Potential V = make_builtin_potential(config.potential_tag);
  const State u0 = make_state(fine, make_builtin_profile(config.u0_tag), config.t_start);
  if (!(config.t_end > config.t_start)) {
    throw ConfigError("cmd_sweep: time.end must exceed time.start");
  }

  const SplitRun<State> reference = run_pde_reference(
      fine, V, u0, config.t_start, config.t_end, config.sweep_ref_steps, false);
  const State& ref = reference.final_state();

  SweepResult result;
  result.m_list = config.sweep_m_list;
  result.n_list = config.sweep_n_list;

  std::string csv = "m";
  for (int n : config.sweep_n_list) csv += "," + std::to_string(n);
  csv += '\n';

  for (int m : config.sweep_m_list) {
    const ProjectionPair pair = make_injection_pair(fine, m);
    std::vector<double> row;
    for (int n : config.sweep_n_list) {
      const State approx = run_approx_split(pair, V, u0, config.t_start, config.t_end, n,
                                            config.swap_subflows);
      row.push_back(error_norm(approx.values, ref.values, config.norm, fine.spacing));
    }
    result.errors.push_back(row);
    csv += std::to_string(m);
    for (double err : row) csv += "," + format_g17(err);
    csv += '\n';
  }

  // The table is a complete artifact on its own; emit it before attempting
  // the fit so a fit failure still leaves the data on disk.
  result.csv_path = require_out(config.out_csv, "output.csv");
  result.summary_path = summary_path_for(result.csv_path);
  write_text_file(result.csv_path, csv);

  // Spatial order estimate: fix the largest n and fit the gap between the
  // coarse-space run and the fine splitting run with that same step count
  // against the coarse spacing (global convention, slope = order). The gap is
  // a purely spatial quantity, unlike the table entries, whose floor is the
  // temporal error of the fine splitting itself.
  const int n_max = config.sweep_n_list.back();
  const State fine_split =
      run_pde_sequential(fine, V, u0, config.t_start, config.t_end, n_max, false,
                         config.swap_subflows)
          .final_state();
  ErrorSeries spatial;
  spatial.norm_kind = config.norm;
  for (std::size_t mi = 0; mi < config.sweep_m_list.size(); ++mi) {
    const ProjectionPair pair = make_injection_pair(fine, config.sweep_m_list[mi]);
    const State approx = run_approx_split(pair, V, u0, config.t_start, config.t_end,
                                          n_max, config.swap_subflows);
    const Grid1D coarse = make_grid(config.x_min, config.x_max, config.sweep_m_list[mi]);
    const double gap =
        error_norm(approx.values, fine_split.values, config.norm, fine.spacing);
    spatial.entries.push_back({coarse.spacing, gap, gap});
  }
  result.spatial_fit = fit_order(spatial, FitConvention::Global);

  std::string summary = "spacing_slope,intercept,residual,points\n";
  summary += csv_row({result.spatial_fit.slope_a, result.spatial_fit.intercept_b,
                      result.spatial_fit.residual_rms,
                      static_cast<double>(result.spatial_fit.points_used)});
  summary += '\n';
  write_text_file(result.summary_path, summary);
  result.stdout_text =
      "spatial slope at n = " + std::to_string(config.sweep_n_list.back()) + ": " +
      format_g17(result.spatial_fit.slope_a) + "\n";
  return result;
}

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const ConfigError&) {
    return 1;
  } catch (const std::invalid_argument&) {
    return 1;
  } catch (const NumericalError&) {
    return 2;
  } catch (...) {
    return 2;
  }
}

}  // namespace evosplit
