#include "heatlab/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatlab {

PotentialField quotient_potential(const SpaceTimeField& xi, const Nonlinearity& f) {
  if (xi.empty() || xi.steps() < 1)
    throw std::invalid_argument("quotient potential needs a trajectory");
  const int K = xi.steps();
  const int n = static_cast<int>(xi.levels[0].size());
  double sup = 0.0;
  for (const auto& lv : xi.levels) {
    if (lv.size()) sup = std::max(sup, lv.cwiseAbs().maxCoeff());
  }
  const double threshold = 1e-12 * sup;
  std::vector<GridVector> steps(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    const GridVector& a = xi.levels[static_cast<std::size_t>(k)];
    const GridVector& b = xi.levels[static_cast<std::size_t>(k) + 1];
    GridVector ak(n);
    for (int j = 0; j < n; ++j) ak[j] = f.quotient(0.5 * (a[j] + b[j]), threshold);
    steps[static_cast<std::size_t>(k)] = std::move(ak);
  }
  return PotentialField::per_step(std::move(steps));
}

void FixedPointConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("fixed_point.tol must be positive");
  if (max_iterations < 1) throw std::invalid_argument("fixed_point.max_iters must be >= 1");
  hum.validate();
}

namespace {

double field_distance(const SpaceTimeField& a, const SpaceTimeField& b) {
  SpaceTimeField diff;
  diff.cell_weight = a.cell_weight;
  diff.tau = a.tau;
  diff.levels.resize(a.levels.size());
  for (std::size_t k = 0; k < a.levels.size(); ++k) diff.levels[k] = a.levels[k] - b.levels[k];
  return space_time_norm(diff);
}

void state_diagnostics(const SpaceTimeField& xi, const SpatialGrid& grid,
                       FixedPointResult& out) {
  // Space-time H1 seminorm via forward differences (Dirichlet closure at the
  // boundary) and the L2 norm of the discrete time derivative.
  const int K = xi.steps();
  const int nx = grid.axis_nodes(0);
  const int ny = grid.dim() == 2 ? grid.axis_nodes(1) : 1;
  const double ih = 1.0 / grid.h();
  double grad_acc = 0.0;
  for (int k = 0; k < K; ++k) {
    const GridVector& lv = xi.levels[static_cast<std::size_t>(k)];
    double g = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const int j = grid.index(ix, iy);
        const double xp = ix + 1 < nx ? lv[j + 1] : 0.0;
        const double gx = (xp - lv[j]) * ih;
        g += gx * gx;
        if (grid.dim() == 2) {
          const double yp = iy + 1 < ny ? lv[j + nx] : 0.0;
          const double gy = (yp - lv[j]) * ih;
          g += gy * gy;
        }
      }
    }
    grad_acc += g;
  }
  out.state_h1_seminorm = std::sqrt(grad_acc * grid.cell_weight() * xi.tau);
  double dt_acc = 0.0;
  for (int k = 0; k < K; ++k) {
    const GridVector d = (xi.levels[static_cast<std::size_t>(k) + 1] -
                          xi.levels[static_cast<std::size_t>(k)]) /
                         xi.tau;
    dt_acc += d.squaredNorm();
  }
  out.state_time_diff_norm = std::sqrt(dt_acc * grid.cell_weight() * xi.tau);
}

}  // namespace

double verify_null(const HeatSystem& sys, const Nonlinearity& f, const GridVector& z0,
                   const SpaceTimeField& control) {
  const double z0_norm = grid_norm(z0, sys.grid.cell_weight());
  if (z0_norm == 0.0) return 0.0;
  const SpaceTimeField z = semilinear_forward_solve(sys.lap, f, sys.grid, z0, control,
                                                    sys.lin, sys.time);
  return grid_norm(z.levels.back(), sys.grid.cell_weight()) / z0_norm;
}

FixedPointResult fixed_point_solve(const HeatSystem& sys, const Nonlinearity& f,
                                   const GridVector& z0, const FixedPointConfig& cfg) {
  cfg.validate();
  FixedPointResult res;

  if (f.identically_zero()) {
    // The equation is already linear; one control solve is the fixed point.
    HeatSystem linear = sys;
    linear.potential = PotentialField::zero(sys.grid.node_count());
    const HumResult hr = solve_penalized_hum(linear, z0, cfg.hum);
    res.status = hr.status;
    res.control = hr.control;
    res.state = hr.state;
    res.iterations = 1;
    res.kappa = hr.kappa;
    res.final_ratio = hr.final_ratio;
    res.kappas.push_back(hr.kappa);
    res.outer_cg_iterations = hr.iterations;
    res.inner_iterations = hr.inner_iterations;
    if (hr.status != SolveStatus::Unobservable) {
      res.verified_ratio = verify_null(sys, f, z0, res.control);
      state_diagnostics(res.state, sys.grid, res);
    }
    return res;
  }

  SpaceTimeField prev = semilinear_forward_solve(sys.lap, f, sys.grid, z0, SpaceTimeField{},
                                                 sys.lin, sys.time, &res.inner_iterations);
  const double tiny = 1e-300;
  bool converged = false;
  HeatSystem linearized = sys;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    linearized.potential = quotient_potential(prev, f);
    const HumResult hr = solve_penalized_hum(linearized, z0, cfg.hum);
    res.iterations = it;
    if (hr.status == SolveStatus::Unobservable) {
      res.status = hr.status;
      return res;
    }
    res.control = hr.control;
    res.state = hr.state;
    res.kappa = hr.kappa;
    res.final_ratio = hr.final_ratio;
    res.kappas.push_back(hr.kappa);
    res.outer_cg_iterations += hr.iterations;
    res.inner_iterations += hr.inner_iterations;
    const double denom = std::max(space_time_norm(prev), tiny);
    const double residual = field_distance(hr.state, prev) / denom;
    res.residuals.push_back(residual);
    prev = hr.state;
    if (residual <= cfg.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) res.status = SolveStatus::NoConvergence;
  res.verified_ratio = verify_null(sys, f, z0, res.control);
  state_diagnostics(res.state, sys.grid, res);
  return res;
}

}  // namespace heatlab
