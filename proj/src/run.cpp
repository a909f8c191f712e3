#include "heatlab/run.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "heatlab/csv.hpp"
#include "heatlab/version.hpp"

namespace heatlab {
namespace {

void emit_preamble(CsvWriter& w, const RunConfig& cfg) {
  w.comment(std::string("heatlab ") + kVersion);
  w.comment("config " + cfg.resolved().dump());
}

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') {
      out += "\"\"";
    } else if (c == '\n') {
      out += "; ";
    } else {
      out += c;
    }
  }
  out += "\"";
  return out;
}

BoxDomain single_box(const RunConfig& cfg, const LatticeSpec& spec) {
  if (cfg.sizes.empty()) {
    throw std::invalid_argument("domain.sizes must list at least one size");
  }
  return centered_box(spec.dim, cfg.sizes.front());
}

PotentialField potential_for(const RunConfig& cfg, const SpatialGrid& grid) {
  if (cfg.potential_value == 0.0) {
    return PotentialField::zero(grid.node_count());
  }
  return PotentialField::constant_in_time(
      Eigen::VectorXd::Constant(grid.node_count(), cfg.potential_value));
}

Point domain_center(const BoxDomain& box, double side) {
  Point c{0.0, 0.0};
  for (int ax = 0; ax < box.dim; ++ax) {
    c[ax] = 0.5 * side * static_cast<double>(box.lo[ax] + box.hi[ax] + 1);
  }
  return c;
}

int cmd_solve_linear(const RunConfig& cfg, CsvWriter& w) {
  const LatticeSpec spec = cfg.lattice();
  const BoxDomain box = single_box(cfg, spec);
  const SpatialGrid grid(spec, box, cfg.m);
  const Eigen::VectorXd z0 = sample_initial_data(cfg.initial_data(), grid, box);
  HeatSystem sys(grid, cfg.time_set(), cfg.time_grid(), potential_for(cfg, grid),
                 cfg.linear_solver());
  const HumResult res = solve_penalized_hum(sys, z0, cfg.hum());
  w.header({"kappa", "final_ratio", "optimality_residual", "outer_iterations",
            "inner_iterations", "status"});
  w.row({format_double(res.kappa), format_double(res.final_ratio),
         format_double(res.optimality_residual), format_int(res.iterations),
         format_int(res.inner_iterations), to_string(res.status)});
  return res.status == SolveStatus::Ok ? 0 : 2;
}

int cmd_solve_semilinear(const RunConfig& cfg, CsvWriter& w) {
  const LatticeSpec spec = cfg.lattice();
  const BoxDomain box = single_box(cfg, spec);
  const SpatialGrid grid(spec, box, cfg.m);
  const Eigen::VectorXd z0 = sample_initial_data(cfg.initial_data(), grid, box);
  HeatSystem sys(grid, cfg.time_set(), cfg.time_grid(),
                 PotentialField::zero(grid.node_count()), cfg.linear_solver());
  const FixedPointResult res =
      fixed_point_solve(sys, cfg.nonlinearity(), z0, cfg.fixed_point());
  w.header({"iterations", "kappa", "final_ratio", "verified_ratio", "last_residual",
            "outer_cg_iterations", "status"});
  const double last_residual = res.residuals.empty() ? 0.0 : res.residuals.back();
  w.row({format_int(res.iterations), format_double(res.kappa),
         format_double(res.final_ratio), format_double(res.verified_ratio),
         format_double(last_residual), format_int(res.outer_cg_iterations),
         to_string(res.status)});
  return res.status == SolveStatus::Ok ? 0 : 2;
}

int cmd_cost_sweep(const RunConfig& cfg, CsvWriter& w) {
  const CostCurve curve = cost_sweep(cfg.sweep(), cfg.report_timing);
  w.header({"n", "extent", "nodes", "kappa", "final_ratio", "fp_iters", "cg_iters",
            "wall_ms", "status"});
  bool all_ok = true;
  for (const CostRow& row : curve.rows) {
    all_ok = all_ok && row.status == SolveStatus::Ok;
    w.row({format_int(row.n), format_double(row.extent), format_int(row.nodes),
           format_double(row.kappa), format_double(row.final_ratio),
           format_int(row.fp_iters), format_int(row.cg_iters),
           format_double(row.wall_ms), to_string(row.status)});
  }
  return all_ok ? 0 : 2;
}

int cmd_observability(const RunConfig& cfg, CsvWriter& w) {
  const LatticeSpec spec = cfg.lattice();
  const BoxDomain box = single_box(cfg, spec);
  const SpatialGrid grid(spec, box, cfg.m);
  HeatSystem sys(grid, cfg.time_set(), cfg.time_grid(), potential_for(cfg, grid),
                 cfg.linear_solver());
  const ObservabilityEstimate est = estimate_observability_constant(sys, cfg.observability());
  w.header({"probe", "ratio", "attained"});
  for (const auto& probe : est.probes) {
    w.row({probe.first, format_double(probe.second),
           probe.first == est.attained_by ? "1" : "0"});
  }
  return est.status == SolveStatus::Ok ? 0 : 2;
}

int cmd_frequency_check(const RunConfig& cfg, CsvWriter& w) {
  const LatticeSpec spec = cfg.lattice();
  const BoxDomain box = single_box(cfg, spec);
  SpatialGrid grid(spec, box, cfg.m);
  const Eigen::VectorXd z0 = sample_initial_data(cfg.initial_data(), grid, box);
  const PotentialField a = potential_for(cfg, grid);
  const DiscreteLaplacian lap(grid);
  const TimeGrid tg = cfg.time_grid();
  const SpaceTimeField u =
      forward_solve(lap, a, grid, z0, SpaceTimeField{}, cfg.linear_solver(), tg);

  FrequencyParams params;
  const double side = spec.cube_side();
  if (cfg.frequency_x0.empty()) {
    params.x0 = domain_center(box, side);
  } else {
    if (static_cast<int>(cfg.frequency_x0.size()) != spec.dim) {
      throw std::invalid_argument("frequency.x0 must have one entry per dimension");
    }
    params.x0[0] = cfg.frequency_x0[0];
    if (spec.dim == 2) {
      params.x0[1] = cfg.frequency_x0[1];
    }
  }
  double min_extent = box.extent(0, spec);
  for (int ax = 1; ax < spec.dim; ++ax) {
    min_extent = std::min(min_extent, box.extent(ax, spec));
  }
  params.r = cfg.frequency_r == 0.0 ? 0.5 * min_extent : cfg.frequency_r;
  params.lambda = cfg.frequency_lambda;
  params.validate();

  const FrequencyReport report = frequency_monotonicity_check(
      u, grid, params, cfg.potential_value == 0.0 ? nullptr : &a);
  w.header({"step", "t", "value", "derivative", "bound", "violation", "defined",
            "tolerance", "pass"});
  for (std::size_t k = 0; k < report.pairs.size(); ++k) {
    const FrequencyPair& pair = report.pairs[k];
    const auto& value = report.values[k];
    w.row({format_int(static_cast<long long>(k)), format_double(pair.t),
           format_double(value.has_value() ? *value : 0.0),
           format_double(pair.derivative), format_double(pair.bound),
           format_double(pair.violation), pair.defined ? "1" : "0",
           format_double(report.tolerance), report.pass ? "1" : "0"});
  }
  return report.pass ? 0 : 2;
}

int cmd_telescope(const RunConfig& cfg, CsvWriter& w) {
  if (cfg.telescope_terms < 2) {
    throw std::invalid_argument("telescope.terms must be at least 2");
  }
  const TimeSet E = cfg.time_set();
  const auto anchor = choose_density_anchor(E);
  const KappaAlpha ka = kappa_alpha(cfg.bound_theta);
  const TelescopeSequence seq =
      build_telescope(E, anchor.first, anchor.second, ka.kappa, cfg.telescope_terms);
  w.header({"m", "l_m", "gap", "measure", "pass"});
  bool all_pass = true;
  for (std::size_t i = 0; i < seq.gaps.size(); ++i) {
    all_pass = all_pass && seq.condition[i] != 0;
    w.row({format_int(static_cast<long long>(i + 1)), format_double(seq.terms[i]),
           format_double(seq.gaps[i]), format_double(seq.intersections[i]),
           seq.condition[i] ? "1" : "0"});
  }
  return all_pass ? 0 : 2;
}

int cmd_bound(const RunConfig& cfg, CsvWriter& w) {
  const ObservabilityBound bound = assemble_observability_constant(
      cfg.time_set(), cfg.horizon, std::abs(cfg.potential_value), cfg.bound_constants());
  w.header({"name", "value"});
  w.row({"l", format_double(bound.l)});
  w.row({"l1", format_double(bound.l1)});
  w.row({"alpha", format_double(bound.alpha)});
  w.row({"kappa", format_double(bound.kappa)});
  w.row({"d", format_double(bound.d)});
  w.row({"k1", format_double(bound.k1)});
  w.row({"k2", format_double(bound.k2)});
  w.row({"k3", format_double(bound.k3)});
  w.row({"series", format_double(bound.series)});
  w.row({"log_value", format_double(bound.log_value)});
  w.row({"value", format_double(bound.value)});
  return 0;
}

int cmd_exhaustion(const RunConfig& cfg, CsvWriter& w) {
  const SweepConfig sweep = cfg.sweep();
  const ConvergenceReport wp = wellposedness_sweep(sweep, cfg.exhaustion_source);
  const ConvergenceReport lc = limit_control_check(sweep);
  w.comment("wellposedness reference n=" + format_int(wp.reference_n) +
            "; limit reference n=" + format_int(lc.reference_n));
  w.header({"check", "n", "extent", "nodes", "e_n", "rho_n", "status"});
  bool all_ok = true;
  for (const ConvergencePoint& p : wp.points) {
    all_ok = all_ok && p.status == SolveStatus::Ok;
    w.row({"wellposedness", format_int(p.n), format_double(p.extent),
           format_int(p.nodes), format_double(p.e_n), format_double(p.rho_n),
           to_string(p.status)});
  }
  for (const ConvergencePoint& p : lc.points) {
    all_ok = all_ok && p.status == SolveStatus::Ok;
    w.row({"limit", format_int(p.n), format_double(p.extent), format_int(p.nodes),
           format_double(p.e_n), format_double(p.rho_n), to_string(p.status)});
  }
  return all_ok ? 0 : 2;
}

}  // namespace

int run_command(const std::string& subcommand, const RunConfig& cfg, std::ostream& out) {
  std::ostringstream buffer;
  int code = 0;
  try {
    CsvWriter w(buffer);
    emit_preamble(w, cfg);
    if (subcommand == "solve-linear") {
      code = cmd_solve_linear(cfg, w);
    } else if (subcommand == "solve-semilinear") {
      code = cmd_solve_semilinear(cfg, w);
    } else if (subcommand == "cost-sweep") {
      code = cmd_cost_sweep(cfg, w);
    } else if (subcommand == "observability") {
      code = cmd_observability(cfg, w);
    } else if (subcommand == "frequency-check") {
      code = cmd_frequency_check(cfg, w);
    } else if (subcommand == "telescope") {
      code = cmd_telescope(cfg, w);
    } else if (subcommand == "bound") {
      code = cmd_bound(cfg, w);
    } else if (subcommand == "exhaustion") {
      code = cmd_exhaustion(cfg, w);
    } else {
      throw std::invalid_argument("unknown subcommand: " + subcommand);
    }
  } catch (const std::exception& err) {
    std::ostringstream failure;
    CsvWriter w(failure);
    emit_preamble(w, cfg);
    w.header({"status", "message"});
    w.row({"error", quoted(err.what())});
    out << failure.str();
    return 2;
  }
  out << buffer.str();
  return code;
}

}  // namespace heatlab
