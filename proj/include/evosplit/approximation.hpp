#pragma once

#include <span>
#include <vector>

#include "evosplit/grid.hpp"

namespace evosplit {

/**
 * Nested restriction/interpolation pair between a fine grid with I points and
 * a coarse grid with m points, where (I - 1) is divisible by (m - 1).
 *
 * Restriction samples the fine vector at every stride-th node; interpolation
 * is piecewise linear and reproduces coarse nodal values exactly (the weights
 * at coincident nodes are computed from integer arithmetic). Consequently
 * restrict(interpolate(c)) == c bit-for-bit, and both maps have max-norm and
 * discrete-L2 norm at most one.
 */
class ProjectionPair {
 public:
  ProjectionPair(const Grid1D& fine, int coarse_points);

  std::vector<double> restrict_to_coarse(std::span<const double> fine_values) const;
  std::vector<double> interpolate_to_fine(std::span<const double> coarse_values) const;

  const Grid1D& fine_grid() const { return fine_; }
  const Grid1D& coarse_grid() const { return coarse_; }
  int stride() const { return stride_; }

 private:
  Grid1D fine_;
  Grid1D coarse_;
  int stride_ = 1;
};

/// Validating factory; throws std::invalid_argument when the grids do not
/// nest (divisibility fails) or coarse_points < 3.
ProjectionPair make_injection_pair(const Grid1D& fine, int coarse_points);

/**
 * Splitting through the coarse space: restrict the fine state, run the
 * frozen sequential diffusion-plus-potential splitting on the coarse grid
 * over [s, t] with n macro steps, and interpolate the final state back. When
 * coarse == fine this reduces to the plain splitting run bit-for-bit.
 */
State run_approx_split(const ProjectionPair& pair, const Potential& V, const State& x,
                       double s, double t, int n, bool swap_subflows = false);

/**
 * Consistency defect of the coarse diffusion operator on a fine-grid state f
 * vanishing at the boundary: max-norm of J_m A_m P_m f - A f. Decays like
 * the square of the coarse spacing for smooth f.
 */
double check_consistency(const ProjectionPair& pair, const State& f);

}  // namespace evosplit
