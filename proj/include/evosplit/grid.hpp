#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace evosplit {

/**
 * Uniform 1D grid on [x_min, x_max], including both boundary nodes.
 *
 * Node i sits at x_min + i * spacing with spacing = (x_max - x_min) / (num_points - 1).
 * All operators built on this grid impose homogeneous Dirichlet conditions at
 * nodes 0 and num_points - 1.
 */
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int num_points = 0;
  double spacing = 0.0;

  double point(int i) const { return x_min + static_cast<double>(i) * spacing; }
  int interior_points() const { return num_points - 2; }
};

/// Validating factory. Throws std::invalid_argument if x_min >= x_max or
/// num_points < 3 (at least one interior node is required).
Grid1D make_grid(double x_min, double x_max, int num_points);

/// Solution snapshot: nodal values plus the simulation time they belong to.
struct State {
  std::vector<double> values;
  double time = 0.0;
};

/// Sample a spatial profile at the grid nodes. Values are taken verbatim;
/// boundary entries are not modified.
State make_state(const Grid1D& grid, const std::function<double(double)>& profile,
                 double time = 0.0);

/// Scalar potential V(x, t) together with a human-readable label.
struct Potential {
  std::function<double(double, double)> sampler;
  std::string label;

  double operator()(double x, double t) const { return sampler(x, t); }
};

/// Sample V(., t) at every grid node.
std::vector<double> sample_potential(const Potential& V, const Grid1D& grid, double t);

/**
 * Tridiagonal matrix stored by diagonals: sub and super have length n - 1,
 * diag has length n. Row i of apply() is
 *   sub[i-1] * v[i-1] + diag[i] * v[i] + super[i] * v[i+1].
 */
struct TridiagonalOperator {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  int size() const { return static_cast<int>(diag.size()); }
  std::vector<double> apply(std::span<const double> v) const;
};

/**
 * Second-difference Laplacian with Dirichlet boundary rows.
 *
 * Interior row i computes (v[i-1] - 2 v[i] + v[i+1]) / spacing^2; the two
 * boundary rows are identity rows, so states that vanish at the boundary keep
 * vanishing under application.
 */
TridiagonalOperator assemble_laplacian(const Grid1D& grid);

/// Pin the first and last entry to exactly 0.
void enforce_dirichlet(std::vector<double>& values);

}  // namespace evosplit
