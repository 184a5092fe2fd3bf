#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evosplit/errors.hpp"
#include "evosplit/grid.hpp"
#include "evosplit/propagators.hpp"

namespace evosplit {

enum class SplitKind { Sequential, Strang, Weighted };

enum class SplitMode { FrozenCoefficient, Subflow, RescaledSubflow };

/**
 * Splitting scheme descriptor.
 *
 * theta is the convex weight of the (B after A) branch in the weighted
 * scheme and is ignored by the other kinds. RescaledSubflow reparametrises
 * time by a factor two and is only defined for the sequential kind.
 */
struct SplitScheme {
  SplitKind kind = SplitKind::Sequential;
  double theta = 0.5;
  SplitMode mode = SplitMode::FrozenCoefficient;

  void validate() const {
    if (kind == SplitKind::Weighted && !(theta > 0.0 && theta < 1.0)) {
      throw std::invalid_argument("SplitScheme: theta must lie strictly inside (0, 1)");
    }
    if (mode == SplitMode::RescaledSubflow && kind != SplitKind::Sequential) {
      throw std::invalid_argument(
          "SplitScheme: the rescaled subflow mode requires the sequential kind");
    }
  }
};

/**
 * Result of a splitting run over [s, t] with n uniform macro steps.
 *
 * trajectory[k].time = s + k * tau, computed from the step index (the final
 * stamp is exactly t). By default only the initial and final states are kept;
 * with store_trajectory the full n + 1 snapshots are stored.
 */
template <class StateT>
struct SplitRun {
  SplitScheme scheme;
  double start_time = 0.0;
  double end_time = 0.0;
  int n_steps = 0;
  double tau = 0.0;
  bool stored_full = false;
  std::vector<StateT> trajectory;

  const StateT& initial() const { return trajectory.front(); }
  const StateT& final_state() const { return trajectory.back(); }
};

namespace detail {

inline void check_run_args(double s, double t, int n) {
  if (!(t >= s)) throw std::invalid_argument("splitting run: need t >= s");
  if (n < 1) throw std::invalid_argument("splitting run: need n >= 1");
}

/// a*x + b*y for any vector type with size() and operator[].
template <class Vec>
Vec lin_comb(double a, const Vec& x, double b, const Vec& y) {
  Vec out(x.size());
  for (decltype(x.size()) i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

// Shared driver: `advance` maps (values, p, t_p, tau) to the values after
// macro step p. Times are stamped from the integer step index; the final
// stamp is pinned to t so round-trips hit the endpoint exactly.
template <class StateT, class Advance>
SplitRun<StateT> drive(SplitScheme scheme, double s, double t, int n, const StateT& x0,
                       bool store_trajectory, Advance&& advance) {
  scheme.validate();
  check_run_args(s, t, n);

  SplitRun<StateT> run;
  run.scheme = scheme;
  run.start_time = s;
  run.end_time = t;
  run.stored_full = store_trajectory;
  run.trajectory.push_back(x0);
  run.trajectory.front().time = s;
  if (t == s) {
    run.end_time = s;
    return run;
  }

  run.n_steps = n;
  const double tau = (t - s) / static_cast<double>(n);
  run.tau = tau;

  auto values = x0.values;
  for (int p = 0; p < n; ++p) {
    const double tp = s + static_cast<double>(p) * tau;
    try {
      values = advance(std::move(values), p, tp, tau);
    } catch (const NumericalError& e) {
      throw NumericalError("splitting run failed at macro step " + std::to_string(p) +
                           ": " + e.what());
    }
    const double stamp = (p + 1 == n) ? t : s + static_cast<double>(p + 1) * tau;
    if (store_trajectory || p + 1 == n) {
      run.trajectory.push_back(StateT{values, stamp});
    }
  }
  return run;
}

}  // namespace detail

/**
 * Sequential (Lie-Trotter) product with coefficients frozen at the left
 * endpoint of each macro step: step p applies the A-flow over tau frozen at
 * t_p = s + p tau, then the B-flow. Flows map (values, t_freeze, tau) to new
 * values.
 */
template <class StateT, class FlowA, class FlowB>
SplitRun<StateT> run_frozen_sequential(FlowA&& flow_a, FlowB&& flow_b, double s, double t,
                                       int n, const StateT& x0,
                                       bool store_trajectory = false) {
  SplitScheme scheme{SplitKind::Sequential, 0.5, SplitMode::FrozenCoefficient};
  return detail::drive(scheme, s, t, n, x0, store_trajectory,
                       [&](auto values, int, double tp, double tau) {
                         values = flow_a(values, tp, tau);
                         values = flow_b(values, tp, tau);
                         return values;
                       });
}

/// Strang product: half A-flow, full B-flow, half A-flow, all frozen at the
/// left endpoint of the macro step.
template <class StateT, class FlowA, class FlowB>
SplitRun<StateT> run_frozen_strang(FlowA&& flow_a, FlowB&& flow_b, double s, double t,
                                   int n, const StateT& x0,
                                   bool store_trajectory = false) {
  SplitScheme scheme{SplitKind::Strang, 0.5, SplitMode::FrozenCoefficient};
  return detail::drive(scheme, s, t, n, x0, store_trajectory,
                       [&](auto values, int, double tp, double tau) {
                         values = flow_a(values, tp, 0.5 * tau);
                         values = flow_b(values, tp, tau);
                         values = flow_a(values, tp, 0.5 * tau);
                         return values;
                       });
}

/**
 * Weighted product: theta (B after A) + (1 - theta) (A after B) per macro
 * step. Meaningful for linear flows only; the convex combination of the two
 * branch states is formed explicitly.
 */
template <class StateT, class FlowA, class FlowB>
SplitRun<StateT> run_frozen_weighted(FlowA&& flow_a, FlowB&& flow_b, double theta,
                                     double s, double t, int n, const StateT& x0,
                                     bool store_trajectory = false) {
  SplitScheme scheme{SplitKind::Weighted, theta, SplitMode::FrozenCoefficient};
  return detail::drive(scheme, s, t, n, x0, store_trajectory,
                       [&](auto values, int, double tp, double tau) {
                         auto ba = flow_b(flow_a(values, tp, tau), tp, tau);
                         auto ab = flow_a(flow_b(values, tp, tau), tp, tau);
                         return detail::lin_comb(theta, ba, 1.0 - theta, ab);
                       });
}

/**
 * Sequential product of genuine sub-evolutions: step p applies the evolution
 * of the A-family over [t_p, t_{p+1}], then the B-family over the same
 * window. Evolutions map (values, t0, t1) to new values.
 */
template <class StateT, class EvoA, class EvoB>
SplitRun<StateT> run_subflow_sequential(EvoA&& evo_a, EvoB&& evo_b, double s, double t,
                                        int n, const StateT& x0,
                                        bool store_trajectory = false) {
  SplitScheme scheme{SplitKind::Sequential, 0.5, SplitMode::Subflow};
  return detail::drive(scheme, s, t, n, x0, store_trajectory,
                       [&](auto values, int p, double tp, double tau) {
                         const double t1 = (p + 1 == n) ? t : s + (p + 1) * tau;
                         values = evo_a(values, tp, t1);
                         values = evo_b(values, tp, t1);
                         return values;
                       });
}

/**
 * Rescaled sequential product on the doubled clock. With tau' = (t - s) / n,
 * step p applies the evolution of the half-speed A-family over
 * [2s + 2p tau', 2s + (2p+1) tau'] and then the half-speed B-family over
 * [2s + (2p+1) tau', 2s + (2p+2) tau']. The evolutions must belong to the
 * families t -> A(t/2) and t -> B(t/2); the product then approximates the
 * original evolution over [s, t].
 */
template <class StateT, class EvoA, class EvoB>
SplitRun<StateT> run_rescaled_sequential(EvoA&& evo_a_half, EvoB&& evo_b_half, double s,
                                         double t, int n, const StateT& x0,
                                         bool store_trajectory = false) {
  SplitScheme scheme{SplitKind::Sequential, 0.5, SplitMode::RescaledSubflow};
  return detail::drive(scheme, s, t, n, x0, store_trajectory,
                       [&](auto values, int p, double, double tau) {
                         const double a0 = 2.0 * s + (2.0 * p) * tau;
                         const double a1 = 2.0 * s + (2.0 * p + 1.0) * tau;
                         const double b1 = 2.0 * s + (2.0 * p + 2.0) * tau;
                         values = evo_a_half(values, a0, a1);
                         values = evo_b_half(values, a1, b1);
                         return values;
                       });
}

/// Frozen-coefficient Crank-Nicolson diffusion sub-flow on a grid. The
/// freeze time is irrelevant because the diffusion generator is autonomous.
inline auto make_cn_diffusion_flow(const Grid1D& grid) {
  return [grid](const std::vector<double>& u, double /*t_freeze*/, double tau) {
    return cn_diffusion_apply(u, grid, tau);
  };
}

/// Exact frozen potential sub-flow on a grid.
inline auto make_potential_flow(const Grid1D& grid, const Potential& V) {
  return [grid, V](const std::vector<double>& u, double t_freeze, double tau) {
    return potential_apply_exact(u, V, grid, t_freeze, tau);
  };
}

/**
 * Frozen sequential splitting of the diffusion-plus-potential problem: each
 * macro step performs one Crank-Nicolson diffusion step followed by the
 * exact potential step frozen at the left endpoint. With swap_subflows the
 * potential acts first.
 */
inline SplitRun<State> run_pde_sequential(const Grid1D& grid, const Potential& V,
                                          const State& u0, double s, double t, int n,
                                          bool store_trajectory = false,
                                          bool swap_subflows = false) {
  auto diffusion = make_cn_diffusion_flow(grid);
  auto potential = make_potential_flow(grid, V);
  if (swap_subflows) {
    return run_frozen_sequential(potential, diffusion, s, t, n, u0, store_trajectory);
  }
  return run_frozen_sequential(diffusion, potential, s, t, n, u0, store_trajectory);
}

/// Unsplit Crank-Nicolson reference run over [s, t] with n uniform steps.
inline SplitRun<State> run_pde_reference(const Grid1D& grid, const Potential& V,
                                         const State& u0, double s, double t, int n,
                                         bool store_trajectory = false) {
  SplitScheme scheme{SplitKind::Sequential, 0.5, SplitMode::FrozenCoefficient};
  return detail::drive(scheme, s, t, n, u0, store_trajectory,
                       [&](std::vector<double> values, int, double tp, double tau) {
                         return cn_reference_apply(values, grid, V, tp, tau);
                       });
}

}  // namespace evosplit
