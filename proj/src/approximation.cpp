#include "evosplit/approximation.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "evosplit/splitting.hpp"

namespace evosplit {

ProjectionPair::ProjectionPair(const Grid1D& fine, int coarse_points) : fine_(fine) {
  if (coarse_points < 3) {
    throw std::invalid_argument("ProjectionPair: coarse grid needs at least 3 points");
  }
  if (coarse_points > fine.num_points) {
    throw std::invalid_argument("ProjectionPair: coarse grid exceeds the fine grid");
  }
  const int fine_cells = fine.num_points - 1;
  const int coarse_cells = coarse_points - 1;
  if (fine_cells % coarse_cells != 0) {
    throw std::invalid_argument(
        "ProjectionPair: fine cell count must be divisible by the coarse cell count");
  }
  stride_ = fine_cells / coarse_cells;
  coarse_ = make_grid(fine.x_min, fine.x_max, coarse_points);
}

std::vector<double> ProjectionPair::restrict_to_coarse(
    std::span<const double> fine_values) const {
  if (static_cast<int>(fine_values.size()) != fine_.num_points) {
    throw std::invalid_argument("restrict_to_coarse: length does not match fine grid");
  }
  std::vector<double> out(static_cast<std::size_t>(coarse_.num_points));
  for (int j = 0; j < coarse_.num_points; ++j) {
    out[static_cast<std::size_t>(j)] =
        fine_values[static_cast<std::size_t>(j * stride_)];
  }
  return out;
}

std::vector<double> ProjectionPair::interpolate_to_fine(
    std::span<const double> coarse_values) const {
  if (static_cast<int>(coarse_values.size()) != coarse_.num_points) {
    throw std::invalid_argument("interpolate_to_fine: length does not match coarse grid");
  }
  std::vector<double> out(static_cast<std::size_t>(fine_.num_points));
  for (int i = 0; i < fine_.num_points; ++i) {
    const int j = i / stride_;
    const int r = i % stride_;
    if (r == 0) {
      out[static_cast<std::size_t>(i)] = coarse_values[static_cast<std::size_t>(j)];
    } else {
      const double w = static_cast<double>(r) / static_cast<double>(stride_);
      out[static_cast<std::size_t>(i)] =
          (1.0 - w) * coarse_values[static_cast<std::size_t>(j)] +
          w * coarse_values[static_cast<std::size_t>(j + 1)];
    }
  }
  return out;
}

ProjectionPair make_injection_pair(const Grid1D& fine, int coarse_points) {
  return ProjectionPair(fine, coarse_points);
}

State run_approx_split(const ProjectionPair& pair, const Potential& V, const State& x,
                       double s, double t, int n, bool swap_subflows) {
  State coarse_state{pair.restrict_to_coarse(x.values), x.time};
  const SplitRun<State> run = run_pde_sequential(pair.coarse_grid(), V, coarse_state, s,
                                                 t, n, false, swap_subflows);
  return State{pair.interpolate_to_fine(run.final_state().values),
               run.final_state().time};
}

double check_consistency(const ProjectionPair& pair, const State& f) {
  const TridiagonalOperator A_fine = assemble_laplacian(pair.fine_grid());
  const TridiagonalOperator A_coarse = assemble_laplacian(pair.coarse_grid());

  const std::vector<double> coarse = pair.restrict_to_coarse(f.values);
  const std::vector<double> coarse_applied = A_coarse.apply(coarse);
  const std::vector<double> lifted = pair.interpolate_to_fine(coarse_applied);
  const std::vector<double> fine_applied = A_fine.apply(f.values);

  double defect = 0.0;
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    defect = std::max(defect, std::abs(lifted[i] - fine_applied[i]));
  }
  return defect;
}

}  // namespace evosplit
