#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "evosplit/approximation.hpp"
#include "evosplit/grid.hpp"
#include "evosplit/splitting.hpp"

using namespace evosplit;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> sample(const Grid1D& g, double (*f)(double)) {
  std::vector<double> out(g.num_points);
  for (int i = 0; i < g.num_points; ++i) out[i] = f(g.point(i));
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("nesting is validated") {
  const Grid1D fine = make_grid(0.0, 1.0, 101);
  CHECK_NOTHROW(make_injection_pair(fine, 101));  // identity pair
  CHECK_NOTHROW(make_injection_pair(fine, 51));
  CHECK_NOTHROW(make_injection_pair(fine, 21));
  CHECK_NOTHROW(make_injection_pair(fine, 11));
  CHECK_NOTHROW(make_injection_pair(fine, 3));
  CHECK_THROWS_AS(make_injection_pair(fine, 40), std::invalid_argument);  // 100 % 39 != 0
  CHECK_THROWS_AS(make_injection_pair(fine, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_injection_pair(fine, 102), std::invalid_argument);
}

TEST_CASE("restriction after interpolation is the identity, bit for bit") {
  const Grid1D fine = make_grid(0.0, 1.0, 101);
  for (int m : {3, 11, 21, 26, 51, 101}) {
    const ProjectionPair pair = make_injection_pair(fine, m);
    std::vector<double> coarse(m);
    for (int j = 0; j < m; ++j) {
      // Awkward values on purpose: the round trip must still be exact.
      coarse[j] = std::sin(1000.0 * j + 0.1) / 3.0 + 1e-17 * j;
    }
    const auto back = pair.restrict_to_coarse(pair.interpolate_to_fine(coarse));
    REQUIRE(back.size() == coarse.size());
    for (int j = 0; j < m; ++j) CHECK(back[j] == coarse[j]);
  }
}

TEST_CASE("coarse grid geometry matches the sampled fine nodes") {
  const Grid1D fine = make_grid(-1.0, 3.0, 81);
  const ProjectionPair pair = make_injection_pair(fine, 21);
  CHECK(pair.stride() == 4);
  CHECK(pair.coarse_grid().num_points == 21);
  CHECK(pair.coarse_grid().x_min == fine.x_min);
  CHECK(pair.coarse_grid().x_max == fine.x_max);
  for (int j = 0; j < 21; ++j) {
    CHECK(pair.coarse_grid().point(j) ==
          doctest::Approx(fine.point(4 * j)).epsilon(1e-15));
  }
}

TEST_CASE("interpolation reproduces linear functions exactly") {
  const Grid1D fine = make_grid(0.0, 2.0, 41);
  const ProjectionPair pair = make_injection_pair(fine, 11);
  std::vector<double> coarse(11);
  for (int j = 0; j < 11; ++j) coarse[j] = 3.0 * pair.coarse_grid().point(j) - 1.0;
  const auto lifted = pair.interpolate_to_fine(coarse);
  for (int i = 0; i < 41; ++i) {
    CHECK(lifted[i] == doctest::Approx(3.0 * fine.point(i) - 1.0).epsilon(1e-14));
  }
}

TEST_CASE("interpolation error for a sine obeys the second-order bound") {
  const Grid1D fine = make_grid(0.0, 1.0, 201);
  const auto truth = sample(fine, +[](double x) { return std::sin(kPi * x); });

  double prev = -1.0;
  for (int m : {11, 21, 41}) {
    const ProjectionPair pair = make_injection_pair(fine, m);
    const auto lifted = pair.interpolate_to_fine(pair.restrict_to_coarse(truth));
    const double err = max_diff(lifted, truth);
    const double delta = pair.coarse_grid().spacing;
    CHECK(err <= kPi * kPi * delta * delta / 8.0 + 1e-12);
    if (prev > 0.0) {
      // Halving the coarse spacing should shrink the error about fourfold.
      CHECK(prev / err > 3.0);
      CHECK(prev / err < 5.0);
    }
    prev = err;
  }
}

TEST_CASE("both maps are max-norm contractions") {
  const Grid1D fine = make_grid(0.0, 1.0, 101);
  const ProjectionPair pair = make_injection_pair(fine, 26);
  const auto f = sample(fine, +[](double x) { return std::cos(7.0 * x) + 0.5 * x; });
  double f_max = 0.0;
  for (double v : f) f_max = std::max(f_max, std::abs(v));

  const auto coarse = pair.restrict_to_coarse(f);
  double c_max = 0.0;
  for (double v : coarse) c_max = std::max(c_max, std::abs(v));
  CHECK(c_max <= f_max);

  const auto lifted = pair.interpolate_to_fine(coarse);
  double l_max = 0.0;
  for (double v : lifted) l_max = std::max(l_max, std::abs(v));
  CHECK(l_max <= c_max + 1e-15);
}

TEST_CASE("the identity pair makes the approximate split equal the plain split") {
  const Grid1D grid = make_grid(0.0, 1.0, 41);
  const ProjectionPair pair = make_injection_pair(grid, 41);
  const Potential V{[](double x, double t) { return t - 500.0 * x * x; }, "well"};
  const State u0 = make_state(
      grid, [](double x) { return std::exp(-50.0 * (x - 0.4) * (x - 0.4)); }, 0.0);

  const State approx = run_approx_split(pair, V, u0, 0.0, 0.01, 8);
  const auto plain = run_pde_sequential(grid, V, u0, 0.0, 0.01, 8);
  REQUIRE(approx.values.size() == plain.final_state().values.size());
  for (std::size_t i = 0; i < approx.values.size(); ++i) {
    CHECK(approx.values[i] == plain.final_state().values[i]);  // bitwise
  }
  CHECK(approx.time == plain.final_state().time);
}

TEST_CASE("coarse-space splitting converges to the fine split as m grows") {
  const Grid1D fine = make_grid(0.0, 1.0, 201);
  const Potential V{[](double x, double t) { return t - 500.0 * x * x; }, "well"};
  const State u0 = make_state(
      fine, [](double x) { return std::exp(-50.0 * (x - 0.4) * (x - 0.4)); }, 0.0);
  const auto target = run_pde_sequential(fine, V, u0, 0.0, 0.01, 16);

  double prev = -1.0;
  for (int m : {26, 51, 101}) {
    const ProjectionPair pair = make_injection_pair(fine, m);
    const State approx = run_approx_split(pair, V, u0, 0.0, 0.01, 16);
    const double err = max_diff(approx.values, target.final_state().values);
    CHECK(err > 0.0);
    if (prev > 0.0) CHECK(err < prev);  // finer coarse spaces do better
    prev = err;
  }
}

TEST_CASE("consistency defect vanishes for linear states and decays quadratically") {
  const Grid1D fine = make_grid(0.0, 1.0, 201);

  // Hat-like boundary-compatible linear-in-pieces state: the coarse operator
  // agrees with the fine one away from the kink, so use a smooth sine for the
  // rate and a genuinely linear interior for the zero check.
  State linear;
  linear.values.assign(fine.num_points, 0.0);
  linear.time = 0.0;
  for (int i = 1; i + 1 < fine.num_points; ++i) linear.values[i] = 2.0 * fine.point(i);
  // Second differences of a linear function vanish on interior nodes that are
  // interior on both grids; boundary-adjacent nodes see the clamped ends, so
  // restrict the check to a pair whose defect is provably zero inside.
  const ProjectionPair id_pair = make_injection_pair(fine, 201);
  CHECK(check_consistency(id_pair, linear) == 0.0);

  const State smooth = make_state(
      fine, [](double x) { return std::sin(kPi * x); }, 0.0);
  double prev = -1.0;
  for (int m : {26, 51, 101}) {
    const ProjectionPair pair = make_injection_pair(fine, m);
    const double defect = check_consistency(pair, smooth);
    CHECK(defect > 0.0);
    if (prev > 0.0) {
      CHECK(prev / defect > 3.0);
      CHECK(prev / defect < 5.5);
    }
    prev = defect;
  }
}
