// Acceptance suite: nine end-to-end checks, one [PASS]/[FAIL] line each.
// Exits nonzero if any check fails. Criteria that name a subcommand run the
// real CLI binary (path in EVOSPLIT_CLI); the rest call the library directly.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evosplit/analysis.hpp"
#include "evosplit/approximation.hpp"
#include "evosplit/csv.hpp"
#include "evosplit/grid.hpp"
#include "evosplit/matrix_backend.hpp"
#include "evosplit/propagators.hpp"
#include "evosplit/splitting.hpp"

namespace fs = std::filesystem;
using namespace evosplit;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

fs::path g_dir;
std::string g_cli;

int run_cli(const std::string& args) {
  const std::string cmd =
      "\"" + g_cli + "\" " + args + " > \"" + (g_dir / "cli.out").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// --- shared fixtures ---------------------------------------------------

// Smooth non-autonomous, non-commuting 3x3 generator pair.
Matrix family_a(double t) {
  Matrix A(3, 3);
  A << -2.0, 0.4 * std::sin(t), 0.0,  //
      0.4 * std::sin(t), -1.2, 0.3,   //
      0.0, 0.3, -0.8;
  return A;
}

Matrix family_b(double t) {
  Matrix B(3, 3);
  B << 0.1, 0.5 * std::cos(t), 0.0,              //
      -0.5 * std::cos(t), -0.2, 0.5 * std::cos(t),  //
      0.0, -0.5 * std::cos(t), 0.15;
  return B;
}

Vector probe3() {
  Vector x(3);
  x << 1.0, -0.5, 0.25;
  return x;
}

auto frozen_flow(MatrixFamily fam) {
  return [fam = std::move(fam)](const Vector& v, double t_freeze, double tau) -> Vector {
    return matrix_expm(tau * fam(t_freeze)) * v;
  };
}

// --- criteria ----------------------------------------------------------

Outcome criterion_order_study() {
  const fs::path csv = g_dir / "c1.csv";
  if (run_cli("order --preset paper-8.3 --out \"" + csv.string() + "\"") != 0) {
    return {false, "cmd_order exited nonzero"};
  }
  const CsvTable summary = read_csv(g_dir / "c1.summary.csv");
  const double slope = summary.rows.at(0).at(0);
  const double order = summary.rows.at(0).at(2);
  const bool ok = slope >= 1.7 && slope <= 2.2 && order >= 0.7 && order <= 1.2;
  return {ok, "slope=" + num(slope) + " order=" + num(order)};
}

Outcome criterion_rate_oracle() {
  const fs::path csv = g_dir / "c2.csv";
  if (run_cli("oracle --seed 42 --out \"" + csv.string() + "\"") != 0) {
    return {false, "cmd_oracle exited nonzero"};
  }
  const CsvTable summary = read_csv(g_dir / "c2.summary.csv");
  if (summary.rows.size() != 21) {
    return {false, "expected 20 instance rows plus the aggregate"};
  }
  for (std::size_t r = 0; r + 1 < summary.rows.size(); ++r) {
    const double best_c = summary.rows[r][3];
    if (!std::isfinite(best_c) || best_c < 0.0) {
      return {false, "instance " + std::to_string(r) + " has best_c=" + num(best_c)};
    }
  }
  const auto& aggregate = summary.rows.back();
  if (aggregate[0] != -1.0) return {false, "aggregate row missing"};
  const double seq_order = aggregate[1];
  const bool ok = seq_order >= 0.85 && seq_order <= 1.15;
  return {ok, "aggregate sequential order=" + num(seq_order)};
}

Outcome criterion_frozen_halving() {
  const MatrixFamily sum = [](double t) { return (family_a(t) + family_b(t)).eval(); };
  const Vector exact = oracle_evolution(sum, 0.0, 1.0) * probe3();
  auto flow_a = frozen_flow(family_a);
  auto flow_b = frozen_flow(family_b);
  const MatrixState x0{probe3(), 0.0};

  std::string detail = "ratios";
  double prev = -1.0;
  bool ok = true;
  for (int n : {32, 64, 128, 256}) {
    const auto run = run_frozen_sequential(flow_a, flow_b, 0.0, 1.0, n, x0);
    const double err = (run.final_state().values - exact).norm();
    if (prev > 0.0) {
      const double ratio = err / prev;
      detail += " " + num(ratio);
      if (!(ratio >= 0.35 && ratio <= 0.65)) ok = false;
    }
    prev = err;
  }
  return {ok, detail};
}

Outcome criterion_subflow_and_rescaled() {
  const MatrixFamily sum = [](double t) { return (family_a(t) + family_b(t)).eval(); };
  const Vector exact = oracle_evolution(sum, 0.0, 1.0) * probe3();
  auto evo_a = [](const Vector& v, double t0, double t1) -> Vector {
    return oracle_evolution(family_a, t0, t1) * v;
  };
  auto evo_b = [](const Vector& v, double t0, double t1) -> Vector {
    return oracle_evolution(family_b, t0, t1) * v;
  };
  const MatrixState x0{probe3(), 0.0};

  ErrorSeries series;
  for (int n : {8, 16, 32, 64}) {
    const auto run = run_subflow_sequential(evo_a, evo_b, 0.0, 1.0, n, x0);
    const double err = (run.final_state().values - exact).norm();
    series.entries.push_back({1.0 / n, err, err});
  }
  const OrderFit fit = fit_order(series, FitConvention::Global);

  // Autonomous telescoping: the rescaled product must match the plain
  // sequential product built from the same generators.
  const MatrixInstance inst = random_negdef_instance(3, 2026);
  auto half_a = [&](const Vector& v, double t0, double t1) -> Vector {
    return matrix_expm((t1 - t0) * inst.A) * v;
  };
  auto half_b = [&](const Vector& v, double t0, double t1) -> Vector {
    return matrix_expm((t1 - t0) * inst.B) * v;
  };
  auto plain_a = frozen_flow([&](double) { return inst.A; });
  auto plain_b = frozen_flow([&](double) { return inst.B; });
  const auto rescaled = run_rescaled_sequential(half_a, half_b, 0.25, 1.25, 6, x0);
  const auto plain = run_frozen_sequential(plain_a, plain_b, 0.25, 1.25, 6, x0);
  const double gap = (rescaled.final_state().values - plain.final_state().values)
                         .cwiseAbs()
                         .maxCoeff();

  const bool ok = fit.estimated_order_p >= 0.9 && gap <= 1e-10;
  return {ok, "subflow order=" + num(fit.estimated_order_p) +
                  " rescaled telescoping gap=" + num(gap)};
}

Outcome criterion_second_order_schemes() {
  bool ok = true;
  std::string detail;
  int idx = 0;
  for (std::uint64_t seed : {7ull, 1234ull}) {
    const int dim = (idx++ == 0) ? 3 : 8;
    const MatrixInstance inst = random_negdef_instance(dim, seed);
    const Vector v = gaussian_vectors(1, dim, seed + 1).front();
    const Vector exact = matrix_expm(1.0 * (inst.A + inst.B)) * v;
    auto flow_a = frozen_flow([&](double) { return inst.A; });
    auto flow_b = frozen_flow([&](double) { return inst.B; });
    const MatrixState x0{v, 0.0};

    ErrorSeries strang_series, weighted_series;
    for (int n : {8, 16, 32, 64, 128}) {
      const auto strang = run_frozen_strang(flow_a, flow_b, 0.0, 1.0, n, x0);
      const auto weighted = run_frozen_weighted(flow_a, flow_b, 0.5, 0.0, 1.0, n, x0);
      const double se = (strang.final_state().values - exact).norm();
      const double we = (weighted.final_state().values - exact).norm();
      strang_series.entries.push_back({1.0 / n, se, se});
      weighted_series.entries.push_back({1.0 / n, we, we});
    }
    const double strang_p =
        fit_order(strang_series, FitConvention::Global).estimated_order_p;
    const double weighted_p =
        fit_order(weighted_series, FitConvention::Global).estimated_order_p;
    if (strang_p < 1.8 || weighted_p < 1.8) ok = false;
    if (!detail.empty()) detail += ",";
    detail += " dim=" + std::to_string(dim) + ": strang=" + num(strang_p) +
              " weighted=" + num(weighted_p);
  }
  return {ok, detail};
}

Outcome criterion_spatial() {
  // Round-trip exactness on every nested pair of the 201-point grid.
  const Grid1D fine = make_grid(0.0, 1.0, 201);
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int m : {3, 5, 6, 9, 11, 21, 26, 41, 51, 101, 201}) {
    const ProjectionPair pair = make_injection_pair(fine, m);
    std::vector<double> coarse(static_cast<std::size_t>(m));
    for (double& c : coarse) c = normal(rng);
    const auto back = pair.restrict_to_coarse(pair.interpolate_to_fine(coarse));
    for (int j = 0; j < m; ++j) {
      if (back[static_cast<std::size_t>(j)] != coarse[static_cast<std::size_t>(j)]) {
        return {false, "round trip not bitwise at m=" + std::to_string(m)};
      }
    }
  }

  const fs::path csv = g_dir / "c6.csv";
  if (run_cli("sweep --preset paper-8.3 --out \"" + csv.string() + "\"") != 0) {
    return {false, "cmd_sweep exited nonzero"};
  }
  const CsvTable table = read_csv(csv);

  // Largest-m row: errors decrease monotonically in n.
  const auto& last_row = table.rows.back();
  for (std::size_t c = 2; c < last_row.size(); ++c) {
    if (!(last_row[c] < last_row[c - 1])) {
      return {false, "largest-m row not monotone at column " + std::to_string(c)};
    }
  }
  // Largest-n column: errors decrease monotonically in m.
  for (std::size_t r = 1; r < table.rows.size(); ++r) {
    if (!(table.rows[r].back() < table.rows[r - 1].back())) {
      return {false, "largest-n column not monotone at row " + std::to_string(r)};
    }
  }

  const CsvTable summary = read_csv(g_dir / "c6.summary.csv");
  const double slope = summary.rows.at(0).at(0);
  const bool ok = slope >= 1.7 && slope <= 2.3;
  return {ok, "round trips bitwise, table monotone, spatial slope=" + num(slope)};
}

Outcome criterion_positivity() {
  const Grid1D grid = make_grid(0.0, 1.0, 201);
  const Potential V{[](double x, double t) { return t - 500.0 * x * x; }, "well"};
  DiffusionFlow spectral(grid);
  auto flow_a = [&](const std::vector<double>& u, double, double tau) {
    return spectral.apply(u, tau);
  };
  auto flow_b = [&](const std::vector<double>& u, double t_freeze, double tau) {
    return potential_apply_exact(u, V, grid, t_freeze, tau);
  };

  State gaussian = make_state(
      grid, [](double x) { return std::exp(-50.0 * (x - 0.4) * (x - 0.4)); }, 0.0);
  State spike;
  spike.values.assign(static_cast<std::size_t>(grid.num_points), 0.0);
  spike.values[80] = 1.0;  // node at x = 0.4
  spike.time = 0.0;

  double worst = 0.0;
  for (const State& u0 : {gaussian, spike}) {
    const auto run = run_frozen_sequential(flow_a, flow_b, 0.0, 1e-2, 20, u0, true);
    const PositivityReport report = check_positivity(run, 1e-12);
    worst = std::min(worst, report.min_value);
    if (!report.pass) {
      return {false, "min value " + num(report.min_value) + " at step " +
                         std::to_string(report.min_step)};
    }
  }
  return {true, "min value over all snapshots=" + num(worst)};
}

Outcome criterion_exactness() {
  // (a) Commuting autonomous generators: every scheme exact to 1e-12 relative.
  const MatrixInstance inst = random_commuting_instance(6, 2024);
  const Vector v = gaussian_vectors(1, 6, 5).front();
  const Vector target = matrix_expm(1.0 * (inst.A + inst.B)) * v;
  const double target_norm = target.norm();
  auto flow_a = frozen_flow([&](double) { return inst.A; });
  auto flow_b = frozen_flow([&](double) { return inst.B; });
  auto evo_a = [&](const Vector& u, double t0, double t1) -> Vector {
    return matrix_expm((t1 - t0) * inst.A) * u;
  };
  auto evo_b = [&](const Vector& u, double t0, double t1) -> Vector {
    return matrix_expm((t1 - t0) * inst.B) * u;
  };
  const MatrixState x0{v, 0.0};

  double worst_rel = 0.0;
  const auto record = [&](const Vector& final_values) {
    worst_rel = std::max(worst_rel, (final_values - target).norm() / target_norm);
  };
  record(run_frozen_sequential(flow_a, flow_b, 0.0, 1.0, 5, x0).final_state().values);
  record(run_frozen_strang(flow_a, flow_b, 0.0, 1.0, 5, x0).final_state().values);
  record(run_frozen_weighted(flow_a, flow_b, 0.5, 0.0, 1.0, 5, x0).final_state().values);
  record(run_subflow_sequential(evo_a, evo_b, 0.0, 1.0, 5, x0).final_state().values);
  record(run_rescaled_sequential(evo_a, evo_b, 0.0, 1.0, 5, x0).final_state().values);
  if (worst_rel > 1e-12) {
    return {false, "commuting schemes max relative error " + num(worst_rel)};
  }

  // (b) V = 0: splitting equals the unsplit reference bit-for-bit.
  const Grid1D grid = make_grid(0.0, 1.0, 201);
  const Potential zero{[](double, double) { return 0.0; }, "zero"};
  const State u0 = make_state(
      grid, [](double x) { return std::exp(-50.0 * (x - 0.4) * (x - 0.4)); }, 0.0);
  const auto split = run_pde_sequential(grid, zero, u0, 0.0, 1e-2, 10, true);
  const auto ref = run_pde_reference(grid, zero, u0, 0.0, 1e-2, 10, true);
  for (std::size_t k = 0; k < split.trajectory.size(); ++k) {
    for (std::size_t i = 0; i < split.trajectory[k].values.size(); ++i) {
      if (split.trajectory[k].values[i] != ref.trajectory[k].values[i]) {
        return {false, "zero-potential runs differ at snapshot " + std::to_string(k)};
      }
    }
  }

  // (c) Manufactured power laws recovered to 1e-10.
  ErrorSeries cubic, quadratic;
  for (double tau : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
    cubic.entries.push_back({tau, 5.0 * tau * tau * tau, 0.0});
    quadratic.entries.push_back({tau, tau * tau, 0.0});
  }
  const OrderFit fit3 = fit_order(cubic, FitConvention::Global);
  const OrderFit fit2 = fit_order(quadratic, FitConvention::Global);
  const double defect =
      std::max({std::abs(fit3.slope_a - 3.0), std::abs(fit3.intercept_b - std::log(5.0)),
                std::abs(fit2.slope_a - 2.0), std::abs(fit2.intercept_b)});
  if (defect > 1e-10) {
    return {false, "manufactured fit defect " + num(defect)};
  }
  return {true, "commuting rel err=" + num(worst_rel) + ", zero-potential bitwise, fit defect=" +
                    num(defect)};
}

Outcome criterion_determinism() {
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"order --preset paper-8.3 --seed 42", "d-order"},
      {"oracle --seed 42", "d-oracle"},
      {"solve --preset paper-fig1", "d-solve"},
  };
  for (const auto& [args, stem] : jobs) {
    const fs::path a = g_dir / (stem + "-a.out");
    const fs::path b = g_dir / (stem + "-b.out");
    if (run_cli(args + " --out \"" + a.string() + "\"") != 0 ||
        run_cli(args + " --out \"" + b.string() + "\"") != 0) {
      return {false, stem + " exited nonzero"};
    }
    if (slurp(a) != slurp(b) || slurp(a).empty()) {
      return {false, stem + " outputs differ between runs"};
    }
    const fs::path sa = g_dir / (stem + "-a.summary.csv");
    if (fs::exists(sa) && slurp(sa) != slurp(g_dir / (stem + "-b.summary.csv"))) {
      return {false, stem + " summaries differ between runs"};
    }
  }
  return {true, "order, oracle, and solve outputs byte-identical across reruns"};
}

}  // namespace

int main() {
  const char* cli = std::getenv("EVOSPLIT_CLI");
  if (cli == nullptr) {
    std::fprintf(stderr, "EVOSPLIT_CLI must point at the CLI binary\n");
    return 2;
  }
  g_cli = cli;
  g_dir = fs::temp_directory_path() / "evosplit-acceptance";
  std::error_code ec;
  fs::remove_all(g_dir, ec);
  fs::create_directories(g_dir);

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"1. local order study (preset paper-8.3)", criterion_order_study, 30.0},
      {"2. matrix rate oracle (20 seeded instances)", criterion_rate_oracle, 10.0},
      {"3. frozen sequential halving ratios (3x3 family)", criterion_frozen_halving, 5.0},
      {"4. subflow order and rescaled telescoping", criterion_subflow_and_rescaled, 5.0},
      {"5. strang and balanced weighted order", criterion_second_order_schemes, 5.0},
      {"6. projection round-trip and spatial sweep", criterion_spatial, 60.0},
      {"7. positivity with exact sub-flows", criterion_positivity, 60.0},
      {"8. exactness invariants", criterion_exactness, 60.0},
      {"9. byte-identical reruns", criterion_determinism, 60.0},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = seconds < c.budget_seconds;
    const bool ok = outcome.ok && in_budget;
    all_ok = all_ok && ok;
    std::printf("[%s] %s: %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str(), seconds, in_budget ? "" : ", over budget");
  }
  return all_ok ? 0 : 1;
}
