#include "heatlab/sweeps.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "heatlab/discretization.hpp"

namespace heatlab {
namespace {

// Center of a box in physical coordinates, one entry per axis.
std::array<double, 2> box_center(const BoxDomain& box, double side) {
  std::array<double, 2> c{0.0, 0.0};
  for (int ax = 0; ax < box.dim; ++ax) {
    c[ax] = 0.5 * side * static_cast<double>(box.lo[ax] + box.hi[ax] + 1);
  }
  return c;
}

std::vector<int> ball_nodes(const SpatialGrid& grid, const std::array<double, 2>& center,
                            double radius) {
  std::vector<int> nodes;
  const double r2 = radius * radius;
  for (int idx = 0; idx < grid.node_count(); ++idx) {
    const auto x = grid.position(idx);
    double d2 = 0.0;
    for (int ax = 0; ax < grid.dim(); ++ax) {
      const double d = x[ax] - center[ax];
      d2 += d * d;
    }
    if (d2 <= r2) {
      nodes.push_back(idx);
    }
  }
  return nodes;
}

}  // namespace

void SweepConfig::validate() const {
  if (sizes.empty()) {
    throw std::invalid_argument("domain.sizes must list at least one size");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) {
      throw std::invalid_argument("domain.sizes entries must be positive");
    }
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("domain.sizes must be strictly increasing");
    }
  }
  if (m < 2) {
    throw std::invalid_argument("lattice.m must be at least 2");
  }
  if (E.horizon() != time.T) {
    throw std::invalid_argument("time.E horizon must match time.T");
  }
  if (!f.identically_zero() && constant_potential != 0.0) {
    throw std::invalid_argument(
        "potential.value only applies to linear runs; semilinear sweeps derive it");
  }
  if (reference != 0 && reference < sizes.back()) {
    throw std::invalid_argument(
        "exhaustion.reference must contain every tested size");
  }
  if (ball_radius < 0.0) {
    throw std::invalid_argument("exhaustion.ball_radius must be nonnegative");
  }
  fp.validate();
  lin.validate(1);
}

long long SweepConfig::reference_or_default() const {
  return reference == 0 ? 2 * sizes.back() : reference;
}

CostCurve cost_sweep(const SweepConfig& cfg, bool timing) {
  cfg.validate();
  const BoxDomain anchor = centered_box(cfg.spec.dim, cfg.sizes.front());
  CostCurve curve;
  for (long long n : cfg.sizes) {
    const BoxDomain box = centered_box(cfg.spec.dim, n);
    const SpatialGrid grid(cfg.spec, box, cfg.m);

    CostRow row;
    row.n = n;
    row.extent = box.extent(0, cfg.spec);
    row.nodes = grid.node_count();
    const auto start = std::chrono::steady_clock::now();
    try {
      PotentialField potential = cfg.constant_potential == 0.0
                                     ? PotentialField::zero(grid.node_count())
                                     : PotentialField::constant_in_time(Eigen::VectorXd::Constant(
                                           grid.node_count(), cfg.constant_potential));
      HeatSystem sys(grid, cfg.E, cfg.time, std::move(potential), cfg.lin);
      const Eigen::VectorXd z0 = sample_initial_data(cfg.z0, grid, anchor);
      if (cfg.f.identically_zero()) {
        const HumResult result = solve_penalized_hum(sys, z0, cfg.fp.hum);
        row.status = result.status;
        row.kappa = result.kappa;
        row.final_ratio = result.final_ratio;
        row.fp_iters = 1;
        row.cg_iters = result.iterations;
        row.iteration_kappas = {result.kappa};
      } else {
        const FixedPointResult result = fixed_point_solve(sys, cfg.f, z0, cfg.fp);
        row.status = result.status;
        row.kappa = result.kappa;
        row.final_ratio = result.verified_ratio;
        row.fp_iters = result.iterations;
        row.cg_iters = result.outer_cg_iterations;
        row.iteration_kappas = result.kappas;
      }
    } catch (const std::exception&) {
      row.status = SolveStatus::NoConvergence;
    }
    if (timing) {
      const auto stop = std::chrono::steady_clock::now();
      row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }
    curve.rows.push_back(std::move(row));
  }
  return curve;
}

ConvergenceReport wellposedness_sweep(const SweepConfig& cfg, const std::string& source) {
  cfg.validate();
  if (source != "zero" && source != "bump" && source != "bump_gated") {
    throw std::invalid_argument("exhaustion.source must be zero, bump, or bump_gated");
  }
  const double side = cfg.spec.cube_side();
  const BoxDomain anchor = centered_box(cfg.spec.dim, cfg.sizes.front());
  const auto center = box_center(anchor, side);
  const double half_extent = 0.5 * anchor.extent(0, cfg.spec);
  double radius = cfg.ball_radius == 0.0 ? 0.8 * half_extent : cfg.ball_radius;
  const SpatialGrid probe_grid(cfg.spec, anchor, cfg.m);
  if (radius >= half_extent - probe_grid.h()) {
    throw std::invalid_argument(
        "exhaustion.ball_radius must keep the comparison ball inside the smallest domain");
  }

  const std::vector<std::uint8_t> gate = active_step_mask(cfg.E, cfg.time.K);

  // Run every domain, largest last; that run is the reference.
  struct Run {
    long long n;
    SpatialGrid grid;
    SpaceTimeField state;
  };
  std::vector<Run> runs;
  for (long long n : cfg.sizes) {
    const BoxDomain box = centered_box(cfg.spec.dim, n);
    SpatialGrid grid(cfg.spec, box, cfg.m);
    const Eigen::VectorXd y0 = sample_initial_data(cfg.z0, grid, anchor);

    SpaceTimeField driving;
    if (source != "zero") {
      InitialDataRecipe bump{"bump", 0.0};
      const Eigen::VectorXd g = sample_initial_data(bump, grid, anchor);
      driving.levels.assign(static_cast<std::size_t>(cfg.time.K) + 1,
                            Eigen::VectorXd::Zero(grid.node_count()));
      driving.cell_weight = grid.cell_weight();
      driving.tau = cfg.time.tau();
      for (int k = 0; k < cfg.time.K; ++k) {
        if (source == "bump" || gate[static_cast<std::size_t>(k)]) {
          driving.levels[static_cast<std::size_t>(k)] = g;
        }
      }
    }

    DiscreteLaplacian lap(grid);
    SpaceTimeField state =
        semilinear_forward_solve(lap, cfg.f, grid, y0, driving, cfg.lin, cfg.time);
    runs.push_back(Run{n, std::move(grid), std::move(state)});
  }

  const Run& ref = runs.back();
  ConvergenceReport report;
  report.reference_n = ref.n;
  const double tau = cfg.time.tau();
  for (const Run& run : runs) {
    ConvergencePoint point;
    point.n = run.n;
    point.extent = centered_box(cfg.spec.dim, run.n).extent(0, cfg.spec);
    point.nodes = run.grid.node_count();
    if (run.n != ref.n) {
      const std::vector<int> map = ref.grid.restriction_indices(run.grid);
      const std::vector<int> nodes = ball_nodes(run.grid, center, radius);
      double acc = 0.0;
      for (int k = 0; k < cfg.time.K; ++k) {
        const auto& a = run.state.levels[static_cast<std::size_t>(k)];
        const auto& b = ref.state.levels[static_cast<std::size_t>(k)];
        double level = 0.0;
        for (int idx : nodes) {
          const double d = a[idx] - b[map[static_cast<std::size_t>(idx)]];
          level += d * d;
        }
        acc += tau * run.grid.cell_weight() * level;
      }
      point.e_n = std::sqrt(acc);
    }
    report.points.push_back(point);
  }
  return report;
}

ConvergenceReport limit_control_check(const SweepConfig& cfg) {
  cfg.validate();
  const double side = cfg.spec.cube_side();
  const BoxDomain anchor = centered_box(cfg.spec.dim, cfg.sizes.front());
  const long long ref_n = cfg.reference_or_default();
  const BoxDomain ref_box = centered_box(cfg.spec.dim, ref_n);
  const SpatialGrid ref_grid(cfg.spec, ref_box, cfg.m);
  DiscreteLaplacian ref_lap(ref_grid);
  const Eigen::VectorXd z0_ref = sample_initial_data(cfg.z0, ref_grid, anchor);
  const double z0_ref_norm = grid_norm(z0_ref, ref_grid.cell_weight());

  ConvergenceReport report;
  report.reference_n = ref_n;
  for (long long n : cfg.sizes) {
    const BoxDomain box = centered_box(cfg.spec.dim, n);
    const SpatialGrid grid(cfg.spec, box, cfg.m);

    ConvergencePoint point;
    point.n = n;
    point.extent = box.extent(0, cfg.spec);
    point.nodes = grid.node_count();

    HeatSystem sys(grid, cfg.E, cfg.time, PotentialField::zero(grid.node_count()),
                   cfg.lin);
    const Eigen::VectorXd z0 = sample_initial_data(cfg.z0, grid, anchor);
    const FixedPointResult fp = fixed_point_solve(sys, cfg.f, z0, cfg.fp);
    point.status = fp.status;
    if (fp.status == SolveStatus::Unobservable || z0_ref_norm == 0.0) {
      report.points.push_back(point);
      continue;
    }

    // Extend the control by zero onto the reference box and replay.
    const std::vector<int> map = ref_grid.restriction_indices(grid);
    SpaceTimeField extended;
    extended.levels.assign(fp.control.levels.size(),
                           Eigen::VectorXd::Zero(ref_grid.node_count()));
    extended.cell_weight = ref_grid.cell_weight();
    extended.tau = cfg.time.tau();
    for (std::size_t k = 0; k < fp.control.levels.size(); ++k) {
      const auto& level = fp.control.levels[k];
      auto& out = extended.levels[k];
      for (int idx = 0; idx < grid.node_count(); ++idx) {
        out[map[static_cast<std::size_t>(idx)]] = level[idx];
      }
    }
    const SpaceTimeField y = semilinear_forward_solve(ref_lap, cfg.f, ref_grid, z0_ref,
                                                      extended, cfg.lin, cfg.time);
    point.rho_n =
        grid_norm(y.levels.back(), ref_grid.cell_weight()) / z0_ref_norm;
    report.points.push_back(point);
  }
  return report;
}

}  // namespace heatlab
