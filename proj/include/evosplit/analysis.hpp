#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "evosplit/grid.hpp"
#include "evosplit/matrix_backend.hpp"
#include "evosplit/splitting.hpp"

namespace evosplit {

enum class NormKind { DiscreteL2, Max };

/// Norm of a nodal vector: sqrt(spacing * sum v_i^2) for DiscreteL2 (all
/// nodes, boundary included), max |v_i| for Max.
double vector_norm(std::span<const double> v, NormKind kind, double spacing = 1.0);

/// Norm of the difference u - v. Throws std::invalid_argument on length
/// mismatch.
double error_norm(std::span<const double> u, std::span<const double> v, NormKind kind,
                  double spacing = 1.0);
double error_norm(const State& u, const State& v, NormKind kind, double spacing = 1.0);

/// One measured error per step size.
struct ErrorSeries {
  struct Entry {
    double tau = 0.0;
    double error = 0.0;
    double rel_error = 0.0;
  };
  std::vector<Entry> entries;
  NormKind norm_kind = NormKind::DiscreteL2;
};

enum class FitConvention {
  Local,   ///< errors after one step; estimated order p = slope - 1
  Global,  ///< errors at a fixed final time; estimated order p = slope
};

enum class FitTarget { Absolute, Relative };

/// Least-squares line y = a w + b through (w, y) = (ln tau, ln error).
struct OrderFit {
  double slope_a = 0.0;
  double intercept_b = 0.0;
  double estimated_order_p = 0.0;
  double residual_rms = 0.0;
  FitConvention convention = FitConvention::Local;
  int points_used = 0;
  /// Entries dropped because the measured error was exactly zero (below
  /// measurement; their logarithm is undefined).
  int points_excluded = 0;
};

/// Fit the log-log line through the series. Zero errors are excluded; fewer
/// than four usable points raise NumericalError.
OrderFit fit_order(const ErrorSeries& series, FitConvention convention,
                   FitTarget target = FitTarget::Absolute);

/**
 * Problem description for the local-error sweep: grid, potential, initial
 * profile, and the freeze time s at which every one-step experiment starts.
 * With ref_refine = k > 1 the reference step is taken on a grid refined k
 * times and compared at the shared nodes.
 */
struct LocalSweepProblem {
  Grid1D grid;
  Potential V;
  std::function<double(double)> u0;
  double start_time = 0.0;
  int ref_refine = 1;
  bool swap_subflows = false;
};

/**
 * For each tau, advance one frozen sequential splitting macro step and one
 * unsplit Crank-Nicolson reference step from the same initial data, and
 * record the norm of the difference plus the error relative to the reference
 * norm. The tau list must be positive and strictly monotone.
 */
ErrorSeries local_error_sweep(const LocalSweepProblem& problem,
                              const std::vector<double>& taus, NormKind kind);

/// Minimum nodal value over every stored snapshot of a run.
struct PositivityReport {
  double min_value = 0.0;
  int min_step = 0;
  double tol = 0.0;
  bool pass = false;
};

PositivityReport check_positivity(const SplitRun<State>& run, double tol = 1e-12);

/// Settings for the splitting rate check on an autonomous matrix instance.
struct RateCheckConfig {
  double alpha = 0.5;
  double t = 1.0;
  std::vector<int> ns = {8, 16, 32, 64, 128};
  int num_commutator_vectors = 100;
  std::uint64_t seed = 42;
  /// Errors below exact_threshold * ||e^{t(A+B)} v|| on every n are treated
  /// as round-off: the instance is reported exact and no fit is attempted.
  double exact_threshold = 1e-12;
};

struct RatePoint {
  int n = 0;
  double seq_error = 0.0;
  double strang_error = 0.0;
};

/**
 * Error of the sequential and Strang products against the exact propagator
 * e^{t(A+B)} on a seeded probe vector, across the step counts in the config,
 * together with global-convention order fits and a commutator-bound report
 * for (-A)^alpha.
 */
struct RateCheckReport {
  std::vector<RatePoint> points;
  std::optional<OrderFit> seq_fit;
  std::optional<OrderFit> strang_fit;
  bool exact = false;
  CommutatorReport commutator;
};

RateCheckReport splitting_rate_check(const MatrixInstance& inst,
                                     const RateCheckConfig& config);

}  // namespace evosplit
