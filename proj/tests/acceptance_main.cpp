// Acceptance harness: one line per criterion, exit code = number of failures.
// argv[1] names the heatlab CLI binary, used by the artifact determinism
// criterion. Each criterion carries the runtime budget it must respect.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatlab/bounds.hpp"
#include "heatlab/config.hpp"
#include "heatlab/sweeps.hpp"
#include "oracles.hpp"

using namespace heatlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string g_cli_path;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double dot_h(const GridVector& a, const GridVector& b, double w) { return w * a.dot(b); }

SpatialGrid unit_cell_grid(int m) {
  return SpatialGrid(LatticeSpec(1, 0.45, 0.5), BoxDomain(1, {0, 0}, {0, 0}), m);
}

// Two unit cubes with partial control balls; nine interior nodes at m = 5.
SpatialGrid two_cell_grid() {
  return SpatialGrid(LatticeSpec(1, 0.15, 0.5), BoxDomain(1, {0, 0}, {1, 0}), 5);
}

SpatialGrid extent_two_grid() {
  return SpatialGrid(LatticeSpec(1, 0.2, 0.5), centered_box(1, 2), 16);
}

SweepConfig uniform_cost_config() {
  std::vector<long long> sizes(31);
  std::iota(sizes.begin(), sizes.end(), 2);  // 2..32
  return SweepConfig{.spec = LatticeSpec(1, 0.2, 0.5),
                     .sizes = std::move(sizes),
                     .m = 16,
                     .E = TimeSet(1.0, {{0.0, 1.0}}),
                     .time = TimeGrid(1.0, 128),
                     .z0 = InitialDataRecipe{},
                     .f = Nonlinearity::sine(1.0)};
}

Outcome c01_adjoint_identity() {
  const SpatialGrid grid = unit_cell_grid(66);  // 65 interior nodes
  const int n = grid.node_count();
  const TimeGrid tg(1.0, 64);
  const DiscreteLaplacian lap(grid);
  const CounterRng rng(9001);
  const PotentialField a = oracle::random_potential(rng, 10, n, tg.K, 2.0);
  const GridVector z0 = oracle::random_vector(rng, 1, n);
  const GridVector p = oracle::random_vector(rng, 2, n);
  const LinearSolveConfig lin;

  const GridVector zT = forward_solve(lap, a, grid, z0, SpaceTimeField{}, lin, tg).levels.back();
  const GridVector phi0 = backward_adjoint_solve(lap, a, grid, p, lin, tg).levels.front();
  const double w = grid.cell_weight();
  const double gap = std::abs(dot_h(zT, p, w) - dot_h(z0, phi0, w));
  const double tol = 1e-10 * grid_norm(z0, w) * grid_norm(p, w);
  return {gap <= tol, "gap " + num(gap) + " tol " + num(tol)};
}

Outcome c02_gramian_symmetry_psd() {
  const SpatialGrid grid = two_cell_grid();
  const int n = grid.node_count();
  const TimeSet E(1.0, {{0.0, 0.3}, {0.5, 0.9}});
  const TimeGrid tg(1.0, 16);
  const CounterRng rng(9002);
  const HeatSystem sys(grid, E, tg, oracle::random_potential(rng, 50, n, tg.K, 1.5));
  const double w = grid.cell_weight();

  double worst_sym = 0.0;
  double worst_psd = 0.0;
  bool pass = true;
  for (int i = 0; i < 20; ++i) {
    const GridVector a = oracle::random_vector(rng, 100 + static_cast<std::uint64_t>(i), n);
    const GridVector b = oracle::random_vector(rng, 200 + static_cast<std::uint64_t>(i), n);
    const GridVector La = gramian_apply(sys, a);
    const GridVector Lb = gramian_apply(sys, b);
    const double gap = std::abs(dot_h(La, b, w) - dot_h(a, Lb, w));
    const double scale = std::max(grid_norm(La, w) * grid_norm(b, w),
                                  grid_norm(a, w) * grid_norm(Lb, w));
    worst_sym = std::max(worst_sym, gap / scale);
    pass = pass && gap <= 1e-9 * scale;
    for (const GridVector* v : {&a, &b}) {
      const GridVector Lv = v == &a ? La : Lb;
      const double quad = dot_h(Lv, *v, w);
      const double floor = -1e-12 * dot_h(*v, *v, w);
      worst_psd = std::min(worst_psd, quad);
      pass = pass && quad >= floor;
    }
  }
  return {pass, "worst symmetry gap " + num(worst_sym) + ", min quadratic form " + num(worst_psd)};
}

Outcome c03_optimality_vs_dense() {
  const SpatialGrid grid = two_cell_grid();
  const int n = grid.node_count();
  const TimeSet E(1.0, {{0.0, 1.0}});
  const TimeGrid tg(1.0, 16);
  const CounterRng rng(9003);
  GridVector values(n);
  for (int j = 0; j < n; ++j) values[j] = 1.5 * rng.symmetric(3, static_cast<std::uint64_t>(j));
  const HeatSystem sys(grid, E, tg, PotentialField::constant_in_time(values));

  HumConfig cfg;
  cfg.epsilon = 1e-8;
  cfg.tolerance = 1e-10;
  bool pass = true;
  double worst_opt = 0.0;
  for (std::uint64_t stream : {7, 8, 9}) {
    const GridVector z0 = oracle::random_vector(rng, stream, n);
    const HumResult res = solve_penalized_hum(sys, z0, cfg);
    pass = pass && res.status == SolveStatus::Ok && res.optimality_residual <= 1e-6;
    worst_opt = std::max(worst_opt, res.optimality_residual);
  }

  const GridVector z0 = oracle::random_vector(rng, 7, n);
  const HumResult res = solve_penalized_hum(sys, z0, cfg);
  const oracle::MatrixXd L = oracle::laplacian_1d(n, grid.h());
  const auto chains =
      oracle::backward_chains(oracle::invert_all(oracle::step_matrices(L, sys.potential, tg.tau(), tg.K)));
  const oracle::DenseHum dense = oracle::dense_hum(chains, oracle::mask_matrix(sys.mask),
                                                   sys.active, tg.tau(), cfg.epsilon, z0);
  const double kappa_gap = std::abs(res.kappa - dense.kappa) / dense.kappa;
  pass = pass && kappa_gap <= 1e-6;
  return {pass, "worst optimality residual " + num(worst_opt) + ", dense kappa gap " +
                    num(kappa_gap)};
}

Outcome c04_linear_null_control() {
  const SpatialGrid grid = extent_two_grid();
  const HeatSystem sys(grid, TimeSet(1.0, {{0.0, 1.0}}), TimeGrid(1.0, 128),
                       PotentialField::zero(grid.node_count()));
  const GridVector z0 = sample_initial_data(InitialDataRecipe{}, grid, grid.box());
  HumConfig cfg;
  cfg.epsilon = 1e-8;
  const HumResult res = solve_penalized_hum(sys, z0, cfg);
  const bool pass = res.status == SolveStatus::Ok && res.final_ratio <= 1e-3;
  return {pass, "final ratio " + num(res.final_ratio) + " <= 0.001, kappa " + num(res.kappa)};
}

Outcome c05_uniform_cost() {
  const SweepConfig cfg = uniform_cost_config();
  const CostCurve curve = cost_sweep(cfg);
  const auto& rows = curve.rows;

  bool pass = rows.size() == cfg.sizes.size();
  double kappa8 = 0.0;
  double n4_iteration_max = 0.0;
  double max_kappa = 0.0;
  for (const CostRow& row : rows) {
    pass = pass && row.status == SolveStatus::Ok;
    max_kappa = std::max(max_kappa, row.kappa);
    if (row.n == 8) kappa8 = row.kappa;
    if (row.n == 4) {
      for (double k : row.iteration_kappas) n4_iteration_max = std::max(n4_iteration_max, k);
    }
  }

  double max_step = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i].n < 8) continue;
    max_step = std::max(max_step, std::abs(rows[i + 1].kappa - rows[i].kappa) / rows[i].kappa);
  }
  pass = pass && max_step <= 0.05;
  pass = pass && kappa8 > 0.0 && max_kappa <= 2.0 * kappa8;

  double max_iteration_kappa = 0.0;
  for (const CostRow& row : rows) {
    for (double k : row.iteration_kappas) max_iteration_kappa = std::max(max_iteration_kappa, k);
  }
  pass = pass && n4_iteration_max > 0.0 && max_iteration_kappa <= 1.10 * n4_iteration_max;

  return {pass, "saturation step " + num(max_step) + ", max kappa " + num(max_kappa) + " vs 2*k8 " +
                    num(2.0 * kappa8) + ", iteration max " + num(max_iteration_kappa) + " vs " +
                    num(1.10 * n4_iteration_max)};
}

Outcome c06_potential_growth_envelope() {
  HumConfig cfg;
  cfg.epsilon = 1e-8;
  const auto kappa_for = [&](double amplitude) {
    const SpatialGrid grid = extent_two_grid();
    // Negative values amplify the dynamics; the sup norm is the amplitude.
    const HeatSystem sys(grid, TimeSet(1.0, {{0.0, 1.0}}), TimeGrid(1.0, 128),
                         PotentialField::constant_in_time(
                             GridVector::Constant(grid.node_count(), -amplitude)));
    const GridVector z0 = sample_initial_data(InitialDataRecipe{}, grid, grid.box());
    const HumResult res = solve_penalized_hum(sys, z0, cfg);
    if (res.status != SolveStatus::Ok) throw std::runtime_error("control solve failed");
    return res.kappa;
  };

  const double k0 = kappa_for(0.0);
  const double k1 = kappa_for(1.0);
  const double horizon = 1.0;
  const double c_fit = (std::log(k1) - std::log(k0)) / (horizon * 1.0 + 1.0);
  bool pass = k1 > k0;
  std::string detail = "C_fit " + num(c_fit);
  for (double amplitude : {4.0, 16.0}) {
    const double measured = std::log(kappa_for(amplitude));
    const double envelope =
        std::log(k0) + c_fit * (horizon * amplitude + std::pow(amplitude, 2.0 / 3.0));
    pass = pass && measured <= envelope + 1e-9;
    detail += ", A=" + num(amplitude) + ": " + num(measured) + " <= " + num(envelope);
  }
  return {pass, detail};
}

Outcome c07_fixed_point_convergence() {
  const SpatialGrid grid(LatticeSpec(1, 0.2, 0.5), centered_box(1, 8), 16);
  const HeatSystem sys(grid, TimeSet(1.0, {{0.0, 1.0}}), TimeGrid(1.0, 128),
                       PotentialField::zero(grid.node_count()));
  const GridVector z0 = sample_initial_data(InitialDataRecipe{}, grid, centered_box(1, 8));
  FixedPointConfig cfg;
  cfg.hum.epsilon = 1e-8;
  const FixedPointResult res = fixed_point_solve(sys, Nonlinearity::sine(1.0), z0, cfg);
  const bool pass = res.status == SolveStatus::Ok && res.iterations <= 50 &&
                    !res.residuals.empty() && res.residuals.back() <= 1e-6 &&
                    res.verified_ratio <= 1e-2;
  return {pass, std::to_string(res.iterations) + " iterations, last residual " +
                    num(res.residuals.empty() ? -1.0 : res.residuals.back()) +
                    ", verified ratio " + num(res.verified_ratio)};
}

Outcome c08_telescoping_density() {
  const std::vector<std::vector<std::array<double, 2>>> corpus = {
      {{0.0, 1.0}},
      {{0.1, 0.9}},
      {{0.0, 0.3}, {0.5, 0.9}},
      {{0.05, 0.2}, {0.3, 0.55}, {0.7, 0.95}},
      {{0.2, 0.8}}};
  const double kappa = kappa_alpha(0.5).kappa;
  bool pass = true;
  int checked = 0;
  for (const auto& intervals : corpus) {
    const TimeSet E(1.0, intervals);
    const auto anchor = choose_density_anchor(E);
    const TelescopeSequence seq = build_telescope(E, anchor.first, anchor.second, kappa, 20);
    pass = pass && seq.all_pass;
    for (std::uint8_t ok : seq.condition) {
      pass = pass && ok != 0;
      ++checked;
    }
  }
  return {pass, std::to_string(checked) + " gap conditions over 5 time sets"};
}

SpaceTimeField caloric_mode(const SpatialGrid& grid, double horizon, int steps) {
  SpaceTimeField u;
  u.cell_weight = grid.cell_weight();
  u.tau = horizon / static_cast<double>(steps);
  u.levels.resize(static_cast<std::size_t>(steps) + 1);
  const double pi = M_PI;
  for (int k = 0; k <= steps; ++k) {
    GridVector level(grid.node_count());
    const double decay = std::exp(-pi * pi * static_cast<double>(k) * u.tau);
    for (int j = 0; j < grid.node_count(); ++j) {
      level[j] = decay * std::sin(pi * grid.coord(0, j));
    }
    u.levels[static_cast<std::size_t>(k)] = std::move(level);
  }
  return u;
}

Outcome c09_frequency_monotonicity() {
  FrequencyParams params;
  params.x0 = {0.5, 0.0};
  params.r = 0.25;
  params.lambda = 0.1;

  const auto violation_at = [&](int m, int steps) {
    const SpatialGrid grid = unit_cell_grid(m);
    const SpaceTimeField u = caloric_mode(grid, 0.1, steps);
    const FrequencyReport rep = frequency_monotonicity_check(u, grid, params, nullptr);
    if (!rep.pass) throw std::runtime_error("frequency certificate failed");
    return rep.max_violation;
  };

  const double coarse = violation_at(128, 100);
  const double fine = violation_at(256, 200);
  const bool pass = coarse <= 1e-2 && fine <= 1.1 * coarse + 1e-15;
  return {pass, "violations " + num(coarse) + " then " + num(fine) + " under refinement"};
}

Outcome c10_exhaustion_convergence() {
  SweepConfig cfg{.spec = LatticeSpec(1, 0.2, 0.5),
                  .sizes = {2, 4, 8, 16},
                  .m = 16,
                  .E = TimeSet(1.0, {{0.0, 1.0}}),
                  .time = TimeGrid(1.0, 128),
                  .z0 = InitialDataRecipe{},
                  .f = Nonlinearity::sine(1.0)};
  cfg.fp.hum.epsilon = 1e-8;

  const SpatialGrid anchor_grid(cfg.spec, centered_box(1, 2), cfg.m);
  const double y0_norm = grid_norm(sample_initial_data(cfg.z0, anchor_grid, centered_box(1, 2)),
                                   anchor_grid.cell_weight());

  const ConvergenceReport wp = wellposedness_sweep(cfg, "bump_gated");
  bool pass = true;
  // Nonincreasing from n = 4 on, up to quadrature roundoff on the tiny tail.
  for (std::size_t i = 1; i + 1 < wp.points.size(); ++i) {
    pass = pass && wp.points[i + 1].e_n <= wp.points[i].e_n + 1e-12 * y0_norm;
  }
  const double e_last_but_one = wp.points[wp.points.size() - 2].e_n;
  pass = pass && e_last_but_one <= 1e-3 * y0_norm;

  const ConvergenceReport lc = limit_control_check(cfg);
  double worst_growth = 0.0;
  for (std::size_t i = 0; i + 1 < lc.points.size(); ++i) {
    pass = pass && lc.points[i].status == SolveStatus::Ok;
    worst_growth = std::max(worst_growth, lc.points[i + 1].rho_n / lc.points[i].rho_n);
  }
  pass = pass && lc.points.back().status == SolveStatus::Ok && worst_growth <= 1.2;

  return {pass, "e tail " + num(e_last_but_one) + " vs " + num(1e-3 * y0_norm) +
                    ", worst rho growth " + num(worst_growth) + ", rho end " +
                    num(lc.points.back().rho_n)};
}

Outcome c11_integrator_refinement() {
  const auto decay_error = [](int m, int steps) {
    const SpatialGrid grid = unit_cell_grid(m);
    const int n = grid.node_count();
    const double horizon = 0.1;
    const TimeGrid tg(horizon, steps);
    GridVector z0(n), exact(n);
    const double pi = M_PI;
    const double decay = std::exp(-pi * pi * horizon);
    for (int j = 0; j < n; ++j) {
      z0[j] = std::sin(pi * grid.coord(0, j));
      exact[j] = decay * z0[j];
    }
    const DiscreteLaplacian lap(grid);
    const GridVector zT = forward_solve(lap, PotentialField::zero(n), grid, z0,
                                        SpaceTimeField{}, LinearSolveConfig{}, tg)
                              .levels.back();
    return grid_norm(zT - exact, grid.cell_weight()) / grid_norm(exact, grid.cell_weight());
  };

  const double coarse = decay_error(128, 100);  // h = 1/128, tau = 1e-3
  const double fine = decay_error(256, 200);
  const double ratio = coarse / fine;
  const bool pass = coarse <= 1e-3 && ratio >= 3.5;
  return {pass, "relative error " + num(coarse) + " (gate 0.001), refinement ratio " +
                    num(ratio) + " (gate 3.5)"};
}

int exit_code_of(int system_status) {
  if (system_status == -1) return -1;
  return WIFEXITED(system_status) ? WEXITSTATUS(system_status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Outcome c12_deterministic_artifacts() {
  if (g_cli_path.empty()) return {false, "no CLI path supplied on the command line"};

  nlohmann::json doc;
  doc["domain"]["sizes"] = nlohmann::json::array();
  for (long long n = 2; n <= 32; ++n) doc["domain"]["sizes"].push_back(n);
  doc["nonlinearity"] = {{"name", "sin"}, {"L", 1.0}};
  const std::string cfg_path = "acceptance_c12_config.json";
  {
    std::ofstream out(cfg_path);
    out << doc.dump(2) << "\n";
  }

  const std::string first_path = "acceptance_c12_first.csv";
  const std::string second_path = "acceptance_c12_second.csv";
  bool pass = true;
  std::string detail;
  for (const std::string& out_path : {first_path, second_path}) {
    const std::string cmd =
        "\"" + g_cli_path + "\" cost-sweep --config " + cfg_path + " --out " + out_path;
    const int code = exit_code_of(std::system(cmd.c_str()));
    if (code != 0) {
      pass = false;
      detail = "CLI exited with " + std::to_string(code);
    }
  }
  if (pass) {
    const std::string first = slurp(first_path);
    const std::string second = slurp(second_path);
    pass = !first.empty() && first == second &&
           first.find("\nn,extent,nodes,kappa,") != std::string::npos;
    detail = std::to_string(first.size()) + " bytes, reruns " +
             (first == second ? "identical" : "differ");
  }
  std::remove(cfg_path.c_str());
  std::remove(first_path.c_str());
  std::remove(second_path.c_str());
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };

  const std::vector<Criterion> criteria = {
      {"adjoint transpose identity", 1.0, c01_adjoint_identity},
      {"gramian symmetry and positivity", 5.0, c02_gramian_symmetry_psd},
      {"penalized optimality vs dense oracle", 5.0, c03_optimality_vs_dense},
      {"linear null control quality", 30.0, c04_linear_null_control},
      {"uniform control cost across domains", 600.0, c05_uniform_cost},
      {"potential growth envelope", 300.0, c06_potential_growth_envelope},
      {"semilinear fixed-point convergence", 120.0, c07_fixed_point_convergence},
      {"telescoping time-sequence density", 1.0, c08_telescoping_density},
      {"frequency function monotonicity", 30.0, c09_frequency_monotonicity},
      {"exhaustion convergence", 300.0, c10_exhaustion_convergence},
      {"integrator accuracy under refinement", 10.0, c11_integrator_refinement},
      {"bitwise deterministic sweep artifacts", 600.0, c12_deterministic_artifacts},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& err) {
      outcome = {false, std::string("exception: ") + err.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += "; over " + num(c.budget_seconds) + "s budget";
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("[%02zu] %-42s %s  (%s; %.1fs)\n", i + 1, c.name,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), elapsed);
    std::fflush(stdout);
  }

  std::printf("acceptance: %d/12 passed, %d failed\n", 12 - failures, failures);
  return failures;
}
