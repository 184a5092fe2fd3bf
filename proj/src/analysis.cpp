#include "evosplit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "evosplit/errors.hpp"
#include "evosplit/propagators.hpp"

namespace evosplit {

double vector_norm(std::span<const double> v, NormKind kind, double spacing) {
  if (kind == NormKind::Max) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(spacing * sum);
}

double error_norm(std::span<const double> u, std::span<const double> v, NormKind kind,
                  double spacing) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("error_norm: length mismatch");
  }
  std::vector<double> diff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - v[i];
  return vector_norm(diff, kind, spacing);
}

double error_norm(const State& u, const State& v, NormKind kind, double spacing) {
  return error_norm(std::span<const double>(u.values), std::span<const double>(v.values),
                    kind, spacing);
}

OrderFit fit_order(const ErrorSeries& series, FitConvention convention, FitTarget target) {
  std::vector<double> w, y;
  int excluded = 0;
  for (const auto& e : series.entries) {
    if (!(e.tau > 0.0)) {
      throw std::invalid_argument("fit_order: tau values must be positive");
    }
    const double err = (target == FitTarget::Relative) ? e.rel_error : e.error;
    if (err == 0.0) {
      ++excluded;
      continue;
    }
    if (err < 0.0 || !std::isfinite(err)) {
      throw NumericalError("fit_order: errors must be finite and nonnegative");
    }
    w.push_back(std::log(e.tau));
    y.push_back(std::log(err));
  }
  const int m = static_cast<int>(w.size());
  if (m < 4) {
    throw NumericalError("fit_order: at least 4 positive error samples are required, got " +
                         std::to_string(m));
  }

  double wm = 0.0, ym = 0.0;
  for (int i = 0; i < m; ++i) {
    wm += w[static_cast<std::size_t>(i)];
    ym += y[static_cast<std::size_t>(i)];
  }
  wm /= m;
  ym /= m;
  double sww = 0.0, swy = 0.0;
  for (int i = 0; i < m; ++i) {
    const double dw = w[static_cast<std::size_t>(i)] - wm;
    sww += dw * dw;
    swy += dw * (y[static_cast<std::size_t>(i)] - ym);
  }
  if (sww == 0.0) {
    throw NumericalError("fit_order: tau values must not all coincide");
  }

  OrderFit fit;
  fit.slope_a = swy / sww;
  fit.intercept_b = ym - fit.slope_a * wm;
  fit.convention = convention;
  fit.estimated_order_p =
      (convention == FitConvention::Local) ? fit.slope_a - 1.0 : fit.slope_a;
  double ss = 0.0;
  for (int i = 0; i < m; ++i) {
    const double r = y[static_cast<std::size_t>(i)] -
                     (fit.slope_a * w[static_cast<std::size_t>(i)] + fit.intercept_b);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / m);
  fit.points_used = m;
  fit.points_excluded = excluded;
  return fit;
}

namespace {

void check_monotone_taus(const std::vector<double>& taus) {
  if (taus.empty()) throw std::invalid_argument("local_error_sweep: empty tau list");
  for (double tau : taus) {
    if (!(tau > 0.0)) {
      throw std::invalid_argument("local_error_sweep: tau values must be positive");
    }
  }
  if (taus.size() > 1) {
    const bool increasing = taus[1] > taus[0];
    for (std::size_t i = 1; i < taus.size(); ++i) {
      const bool step_up = taus[i] > taus[i - 1];
      if (taus[i] == taus[i - 1] || step_up != increasing) {
        throw std::invalid_argument("local_error_sweep: tau list must be strictly monotone");
      }
    }
  }
}

}  // namespace

ErrorSeries local_error_sweep(const LocalSweepProblem& problem,
                              const std::vector<double>& taus, NormKind kind) {
  check_monotone_taus(taus);
  if (problem.ref_refine < 1) {
    throw std::invalid_argument("local_error_sweep: ref_refine must be >= 1");
  }

  const Grid1D& grid = problem.grid;
  const State u0 = make_state(grid, problem.u0, problem.start_time);

  Grid1D ref_grid = grid;
  State ref_u0 = u0;
  if (problem.ref_refine > 1) {
    const int fine_points = (grid.num_points - 1) * problem.ref_refine + 1;
    ref_grid = make_grid(grid.x_min, grid.x_max, fine_points);
    ref_u0 = make_state(ref_grid, problem.u0, problem.start_time);
  }

  ErrorSeries series;
  series.norm_kind = kind;
  for (double tau : taus) {
    const double s = problem.start_time;
    const SplitRun<State> split =
        run_pde_sequential(grid, problem.V, u0, s, s + tau, 1, false,
                           problem.swap_subflows);
    State ref = cn_reference_step(ref_u0, ref_grid, problem.V, s, tau);
    if (problem.ref_refine > 1) {
      std::vector<double> sampled(static_cast<std::size_t>(grid.num_points));
      for (int i = 0; i < grid.num_points; ++i) {
        sampled[static_cast<std::size_t>(i)] =
            ref.values[static_cast<std::size_t>(i * problem.ref_refine)];
      }
      ref.values = std::move(sampled);
    }

    ErrorSeries::Entry entry;
    entry.tau = tau;
    entry.error = error_norm(split.final_state().values, ref.values, kind, grid.spacing);
    const double ref_norm = vector_norm(ref.values, kind, grid.spacing);
    entry.rel_error = (ref_norm > 0.0) ? entry.error / ref_norm : entry.error;
    series.entries.push_back(entry);
  }
  return series;
}

PositivityReport check_positivity(const SplitRun<State>& run, double tol) {
  if (run.trajectory.empty()) {
    throw std::invalid_argument("check_positivity: empty trajectory");
  }
  PositivityReport report;
  report.tol = tol;
  report.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < run.trajectory.size(); ++k) {
    for (double x : run.trajectory[k].values) {
      if (x < report.min_value) {
        report.min_value = x;
        report.min_step = static_cast<int>(k);
      }
    }
  }
  report.pass = report.min_value >= -tol;
  return report;
}

RateCheckReport splitting_rate_check(const MatrixInstance& inst,
                                     const RateCheckConfig& config) {
  if (config.ns.empty()) {
    throw std::invalid_argument("splitting_rate_check: empty step-count list");
  }
  for (int n : config.ns) {
    if (n < 1) throw std::invalid_argument("splitting_rate_check: step counts must be >= 1");
  }
  const int dim = inst.dim();

  // Probe vector plus commutator probes come from one seeded stream.
  const std::vector<Vector> probes =
      gaussian_vectors(config.num_commutator_vectors + 1, dim, config.seed);
  Vector v = probes.back();
  if (v.norm() > 0.0) v.normalize();
  const std::vector<Vector> commutator_probes(probes.begin(), probes.end() - 1);

  const Matrix exact = matrix_expm(config.t * (inst.A + inst.B));
  const Vector target = exact * v;
  const double target_norm = std::max(target.norm(), 1e-300);

  RateCheckReport report;
  report.commutator = commutator_bound_check(inst, config.alpha, commutator_probes);

  ErrorSeries seq_series, strang_series;
  bool all_roundoff = true;
  for (int n : config.ns) {
    const double tau = config.t / static_cast<double>(n);
    const Matrix eA = matrix_expm(tau * inst.A);
    const Matrix eB = matrix_expm(tau * inst.B);
    const Matrix eA_half = matrix_expm(0.5 * tau * inst.A);

    const MatrixState x0{v, 0.0};
    auto flow_a_full = [&](const Vector& u, double, double) -> Vector { return eA * u; };
    auto flow_a_half = [&](const Vector& u, double, double) -> Vector {
      return eA_half * u;
    };
    auto flow_b = [&](const Vector& u, double, double) -> Vector { return eB * u; };

    const auto seq = run_frozen_sequential(flow_a_full, flow_b, 0.0, config.t, n, x0);
    const auto strang = run_frozen_strang(flow_a_half, flow_b, 0.0, config.t, n, x0);

    RatePoint point;
    point.n = n;
    point.seq_error = (seq.final_state().values - target).norm();
    point.strang_error = (strang.final_state().values - target).norm();
    report.points.push_back(point);

    seq_series.entries.push_back({tau, point.seq_error, point.seq_error / target_norm});
    strang_series.entries.push_back(
        {tau, point.strang_error, point.strang_error / target_norm});

    if (point.seq_error > config.exact_threshold * target_norm ||
        point.strang_error > config.exact_threshold * target_norm) {
      all_roundoff = false;
    }
  }

  report.exact = all_roundoff;
  if (!report.exact) {
    report.seq_fit = fit_order(seq_series, FitConvention::Global);
    report.strang_fit = fit_order(strang_series, FitConvention::Global);
  }
  return report;
}

}  // namespace evosplit
