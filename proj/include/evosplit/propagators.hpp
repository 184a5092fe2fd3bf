#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "evosplit/grid.hpp"

namespace evosplit {

/**
 * One Crank-Nicolson step of the pure diffusion flow,
 *
 *   (Id - (tau/2) L) u+ = (Id + (tau/2) L) u,
 *
 * with L the Dirichlet Laplacian of the grid. Boundary rows of the system are
 * identity rows with zero right-hand side; the output vanishes at the
 * boundary exactly. Unconditionally stable in the discrete L2 norm.
 */
std::vector<double> cn_diffusion_apply(std::span<const double> u, const Grid1D& grid,
                                       double tau);
State cn_diffusion_step(const State& state, const Grid1D& grid, double tau);

/**
 * Exact flow of the frozen multiplication operator:
 * u+[i] = exp(tau * V(x_i, t_freeze)) * u[i] on interior nodes, boundary
 * pinned to 0. Throws NumericalError when tau * V overflows the exponential.
 */
std::vector<double> potential_apply_exact(std::span<const double> u, const Potential& V,
                                          const Grid1D& grid, double t_freeze, double tau);
State potential_step_exact(const State& state, const Potential& V, const Grid1D& grid,
                           double t_freeze, double tau);

/**
 * One Crank-Nicolson step of the unsplit operator L + diag V:
 *
 *   (Id - (tau/2)(L + diag V(., t_n + tau))) u+ = (Id + (tau/2)(L + diag V(., t_n))) u.
 *
 * The potential is sampled at the old time level on the explicit side and at
 * the new level on the implicit side. The implicit matrix is solved by the
 * Thomas algorithm when strictly diagonally dominant and by a pivoting
 * tridiagonal solve otherwise.
 */
std::vector<double> cn_reference_apply(std::span<const double> u, const Grid1D& grid,
                                       const Potential& V, double t_n, double tau);
State cn_reference_step(const State& state, const Grid1D& grid, const Potential& V,
                        double t_n, double tau);

/**
 * Exact Dirichlet heat flow e^{tau L} on the grid, realised through a
 * spectral decomposition of the interior second-difference block. The
 * propagator has nonnegative entries, so nonnegative data stays nonnegative
 * up to round-off for every tau >= 0.
 */
class DiffusionFlow {
 public:
  explicit DiffusionFlow(const Grid1D& grid);

  std::vector<double> apply(std::span<const double> u, double tau) const;

  /// Eigenvalues of the interior block, ascending.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Grid1D grid_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::VectorXd eigenvalues_;
};

}  // namespace evosplit
