#include "evosplit/propagators.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>

#include "evosplit/errors.hpp"
#include "evosplit/tridiag.hpp"

namespace evosplit {

namespace {

// Shared Crank-Nicolson core. v_expl / v_impl are full-length potential
// samples added to the Laplacian diagonal on the respective side, or nullptr
// for pure diffusion. Interior rows discretise Id -/+ (tau/2)(L + diag v);
// boundary rows of the implicit system are identity rows with zero rhs.
std::vector<double> cn_step_core(std::span<const double> u, const Grid1D& grid, double tau,
                                 const std::vector<double>* v_expl,
                                 const std::vector<double>* v_impl) {
  const int n = grid.num_points;
  if (static_cast<int>(u.size()) != n) {
    throw std::invalid_argument("cn step: state length does not match grid");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("cn step: tau must be positive and finite");
  }

  TridiagonalOperator expl = assemble_laplacian(grid);
  if (v_expl != nullptr) {
    for (int i = 1; i + 1 < n; ++i) {
      expl.diag[static_cast<std::size_t>(i)] += (*v_expl)[static_cast<std::size_t>(i)];
    }
  }

  const double half = 0.5 * tau;
  std::vector<double> lu = expl.apply(u);
  std::vector<double> rhs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rhs[static_cast<std::size_t>(i)] =
        u[static_cast<std::size_t>(i)] + half * lu[static_cast<std::size_t>(i)];
  }
  rhs.front() = 0.0;
  rhs.back() = 0.0;

  TridiagonalOperator impl = assemble_laplacian(grid);
  if (v_impl != nullptr) {
    for (int i = 1; i + 1 < n; ++i) {
      impl.diag[static_cast<std::size_t>(i)] += (*v_impl)[static_cast<std::size_t>(i)];
    }
  }
  TridiagonalOperator system;
  system.sub.assign(static_cast<std::size_t>(n - 1), 0.0);
  system.diag.assign(static_cast<std::size_t>(n), 0.0);
  system.super.assign(static_cast<std::size_t>(n - 1), 0.0);
  system.diag[0] = 1.0;
  system.diag[static_cast<std::size_t>(n - 1)] = 1.0;
  for (int i = 1; i + 1 < n; ++i) {
    system.sub[static_cast<std::size_t>(i - 1)] = -half * impl.sub[static_cast<std::size_t>(i - 1)];
    system.diag[static_cast<std::size_t>(i)] = 1.0 - half * impl.diag[static_cast<std::size_t>(i)];
    system.super[static_cast<std::size_t>(i)] = -half * impl.super[static_cast<std::size_t>(i)];
  }

  std::vector<double> out;
  try {
    out = solve_tridiagonal(system, rhs);
  } catch (const NumericalError& e) {
    std::ostringstream msg;
    msg << "cn step failed for tau = " << tau << ": " << e.what();
    throw NumericalError(msg.str());
  }
  enforce_dirichlet(out);
  return out;
}

}  // namespace

std::vector<double> cn_diffusion_apply(std::span<const double> u, const Grid1D& grid,
                                       double tau) {
  return cn_step_core(u, grid, tau, nullptr, nullptr);
}

State cn_diffusion_step(const State& state, const Grid1D& grid, double tau) {
  return State{cn_diffusion_apply(state.values, grid, tau), state.time + tau};
}

std::vector<double> potential_apply_exact(std::span<const double> u, const Potential& V,
                                          const Grid1D& grid, double t_freeze, double tau) {
  const int n = grid.num_points;
  if (static_cast<int>(u.size()) != n) {
    throw std::invalid_argument("potential step: state length does not match grid");
  }
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i + 1 < n; ++i) {
    const double x = grid.point(i);
    const double arg = tau * V(x, t_freeze);
    if (!std::isfinite(arg) || arg > 700.0) {
      std::ostringstream msg;
      msg << "potential step overflow: tau * V = " << arg << " at x = " << x
          << ", t = " << t_freeze;
      throw NumericalError(msg.str());
    }
    const double value = std::exp(arg) * u[static_cast<std::size_t>(i)];
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg << "potential step produced a non-finite value at x = " << x
          << ", t = " << t_freeze;
      throw NumericalError(msg.str());
    }
    out[static_cast<std::size_t>(i)] = value;
  }
  return out;
}

State potential_step_exact(const State& state, const Potential& V, const Grid1D& grid,
                           double t_freeze, double tau) {
  return State{potential_apply_exact(state.values, V, grid, t_freeze, tau),
               state.time + tau};
}

std::vector<double> cn_reference_apply(std::span<const double> u, const Grid1D& grid,
                                       const Potential& V, double t_n, double tau) {
  const std::vector<double> v_old = sample_potential(V, grid, t_n);
  const std::vector<double> v_new = sample_potential(V, grid, t_n + tau);
  return cn_step_core(u, grid, tau, &v_old, &v_new);
}

State cn_reference_step(const State& state, const Grid1D& grid, const Potential& V,
                        double t_n, double tau) {
  return State{cn_reference_apply(state.values, grid, V, t_n, tau), state.time + tau};
}

DiffusionFlow::DiffusionFlow(const Grid1D& grid) : grid_(grid) {
  const int m = grid.interior_points();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m, m);
  const double inv_h2 = 1.0 / (grid.spacing * grid.spacing);
  for (int i = 0; i < m; ++i) {
    block(i, i) = -2.0 * inv_h2;
    if (i > 0) block(i, i - 1) = inv_h2;
    if (i + 1 < m) block(i, i + 1) = inv_h2;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("DiffusionFlow: eigendecomposition failed");
  }
  eigenvectors_ = solver.eigenvectors();
  eigenvalues_ = solver.eigenvalues();
}

std::vector<double> DiffusionFlow::apply(std::span<const double> u, double tau) const {
  const int n = grid_.num_points;
  if (static_cast<int>(u.size()) != n) {
    throw std::invalid_argument("DiffusionFlow::apply: state length does not match grid");
  }
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw std::invalid_argument("DiffusionFlow::apply: tau must be nonnegative");
  }
  const int m = grid_.interior_points();
  Eigen::VectorXd interior(m);
  for (int i = 0; i < m; ++i) interior(i) = u[static_cast<std::size_t>(i + 1)];
  Eigen::VectorXd coeff = eigenvectors_.transpose() * interior;
  for (int k = 0; k < m; ++k) coeff(k) *= std::exp(tau * eigenvalues_(k));
  Eigen::VectorXd evolved = eigenvectors_ * coeff;
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i + 1)] = evolved(i);
  return out;
}

}  // namespace evosplit
