#include "evosplit/grid.hpp"

#include <stdexcept>

namespace evosplit {

Grid1D make_grid(double x_min, double x_max, int num_points) {
  if (!(x_min < x_max)) {
    throw std::invalid_argument("make_grid: x_min must be strictly below x_max");
  }
  if (num_points < 3) {
    throw std::invalid_argument("make_grid: need at least 3 points (one interior node)");
  }
  Grid1D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.num_points = num_points;
  g.spacing = (x_max - x_min) / static_cast<double>(num_points - 1);
  return g;
}

State make_state(const Grid1D& grid, const std::function<double(double)>& profile,
                 double time) {
  State s;
  s.values.resize(static_cast<std::size_t>(grid.num_points));
  for (int i = 0; i < grid.num_points; ++i) {
    s.values[static_cast<std::size_t>(i)] = profile(grid.point(i));
  }
  s.time = time;
  return s;
}

std::vector<double> sample_potential(const Potential& V, const Grid1D& grid, double t) {
  std::vector<double> out(static_cast<std::size_t>(grid.num_points));
  for (int i = 0; i < grid.num_points; ++i) {
    out[static_cast<std::size_t>(i)] = V(grid.point(i), t);
  }
  return out;
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> v) const {
  const int n = size();
  if (static_cast<int>(v.size()) != n) {
    throw std::invalid_argument("TridiagonalOperator::apply: size mismatch");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = diag[0] * v[0];
    return out;
  }
  out[0] = diag[0] * v[0] + super[0] * v[1];
  for (int i = 1; i + 1 < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        sub[static_cast<std::size_t>(i - 1)] * v[static_cast<std::size_t>(i - 1)] +
        diag[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)] +
        super[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i + 1)];
  }
  out[static_cast<std::size_t>(n - 1)] =
      sub[static_cast<std::size_t>(n - 2)] * v[static_cast<std::size_t>(n - 2)] +
      diag[static_cast<std::size_t>(n - 1)] * v[static_cast<std::size_t>(n - 1)];
  return out;
}

TridiagonalOperator assemble_laplacian(const Grid1D& grid) {
  const int n = grid.num_points;
  TridiagonalOperator L;
  L.sub.assign(static_cast<std::size_t>(n - 1), 0.0);
  L.diag.assign(static_cast<std::size_t>(n), 0.0);
  L.super.assign(static_cast<std::size_t>(n - 1), 0.0);

  const double inv_h2 = 1.0 / (grid.spacing * grid.spacing);
  L.diag[0] = 1.0;
  L.diag[static_cast<std::size_t>(n - 1)] = 1.0;
  for (int i = 1; i + 1 < n; ++i) {
    L.sub[static_cast<std::size_t>(i - 1)] = inv_h2;
    L.diag[static_cast<std::size_t>(i)] = -2.0 * inv_h2;
    L.super[static_cast<std::size_t>(i)] = inv_h2;
  }
  return L;
}

void enforce_dirichlet(std::vector<double>& values) {
  if (values.empty()) return;
  values.front() = 0.0;
  values.back() = 0.0;
}

}  // namespace evosplit
