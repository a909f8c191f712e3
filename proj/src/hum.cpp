#include "heatlab/hum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heatlab/initial_data.hpp"

namespace heatlab {

HeatSystem::HeatSystem(SpatialGrid grid_, const TimeSet& E, const TimeGrid& time_,
                       PotentialField a, LinearSolveConfig lin_)
    : grid(std::move(grid_)), lap(grid), mask(control_mask(grid)), time(time_),
      active(active_step_mask(E, time_.K)), potential(std::move(a)), lin(lin_) {
  if (E.horizon() != time.T)
    throw std::invalid_argument("time set horizon and time grid T disagree");
  if (potential.node_count() != grid.node_count())
    throw std::invalid_argument("potential/grid size mismatch");
  if (!potential.is_time_constant() && potential.step_count() != time.K)
    throw std::invalid_argument("potential must cover every time step");
  lin.validate(grid.node_count());
}

void HumConfig::validate() const {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw std::invalid_argument("hum.epsilon must be in (0, 1]");
  if (!(tolerance > 0.0) || tolerance > 1e-8)
    throw std::invalid_argument("hum.tol must be in (0, 1e-8]");
  if (max_iterations < 0) throw std::invalid_argument("hum.max_iters must be >= 0");
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Ok:
      return "ok";
    case SolveStatus::Unobservable:
      return "unobservable";
    case SolveStatus::NoConvergence:
      return "no_convergence";
  }
  return "unknown";
}

namespace {

// Masked control field read off a backward dual trajectory: u^k = s_k * w .* phi^k
// on levels 0..K-1, exactly zero elsewhere.
SpaceTimeField masked_control(const HeatSystem& sys, const SpaceTimeField& phi) {
  const int K = sys.time.K;
  const int n = sys.grid.node_count();
  SpaceTimeField u;
  u.cell_weight = sys.grid.cell_weight();
  u.tau = sys.time.tau();
  u.levels.assign(static_cast<std::size_t>(K) + 1, GridVector::Zero(n));
  for (int k = 0; k < K; ++k) {
    if (!sys.active[static_cast<std::size_t>(k)]) continue;
    const GridVector& pk = phi.levels[static_cast<std::size_t>(k)];
    GridVector& uk = u.levels[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j) {
      if (sys.mask.w[static_cast<std::size_t>(j)]) uk[j] = pk[j];
    }
  }
  return u;
}

}  // namespace

GridVector gramian_apply(const HeatSystem& sys, const GridVector& pT,
                         long long* inner_iterations) {
  const SpaceTimeField phi = backward_adjoint_solve(sys.lap, sys.potential, sys.grid, pT,
                                                    sys.lin, sys.time, inner_iterations);
  const SpaceTimeField source = masked_control(sys, phi);
  const GridVector zero = GridVector::Zero(sys.grid.node_count());
  const SpaceTimeField z = forward_solve(sys.lap, sys.potential, sys.grid, zero, source,
                                         sys.lin, sys.time, inner_iterations);
  return z.levels.back();
}

HumResult solve_penalized_hum(const HeatSystem& sys, const GridVector& z0,
                              const HumConfig& cfg) {
  cfg.validate();
  const int n = sys.grid.node_count();
  if (z0.size() != n) throw std::invalid_argument("initial data/grid size mismatch");

  HumResult res;
  res.p_hat = GridVector::Zero(n);
  const double z0_norm = grid_norm(z0, sys.grid.cell_weight());

  if (sys.mask.empty()) {
    res.status = SolveStatus::Unobservable;
    return res;
  }
  if (z0_norm == 0.0) {
    // Nothing to steer; the zero control is optimal.
    res.control.cell_weight = res.state.cell_weight = sys.grid.cell_weight();
    res.control.tau = res.state.tau = sys.time.tau();
    res.control.levels.assign(static_cast<std::size_t>(sys.time.K) + 1, GridVector::Zero(n));
    res.state.levels.assign(static_cast<std::size_t>(sys.time.K) + 1, GridVector::Zero(n));
    return res;
  }

  const SpaceTimeField free_run = forward_solve(sys.lap, sys.potential, sys.grid, z0,
                                                SpaceTimeField{}, sys.lin, sys.time,
                                                &res.inner_iterations);
  const GridVector rhs = -free_run.levels.back();

  // CG on (Gramian + eps I) p = rhs. The grid weight h^dim scales both sides
  // equally, so plain dot products give the same iterates.
  const int max_iters = cfg.max_iterations ? cfg.max_iterations : std::max(2000, 20 * n);
  const double rhs_norm = rhs.norm();
  GridVector p = GridVector::Zero(n);
  GridVector r = rhs;
  GridVector q = r;
  GridVector Aq(n);
  double rr = r.squaredNorm();
  int it = 0;
  while (it < max_iters && std::sqrt(rr) > cfg.tolerance * rhs_norm) {
    Aq = gramian_apply(sys, q, &res.inner_iterations) + cfg.epsilon * q;
    const double qAq = q.dot(Aq);
    if (!(qAq > 0.0)) break;  // numerically semidefinite; current iterate is best
    const double alpha = rr / qAq;
    p += alpha * q;
    r -= alpha * Aq;
    ++it;
    const double rr_next = r.squaredNorm();
    q = r + (rr_next / rr) * q;
    rr = rr_next;
  }
  res.iterations = it;
  res.p_hat = p;
  if (std::sqrt(rr) > cfg.tolerance * rhs_norm) res.status = SolveStatus::NoConvergence;

  const SpaceTimeField phi = backward_adjoint_solve(sys.lap, sys.potential, sys.grid, p,
                                                    sys.lin, sys.time, &res.inner_iterations);
  res.control = masked_control(sys, phi);
  res.state = forward_solve(sys.lap, sys.potential, sys.grid, z0, res.control, sys.lin,
                            sys.time, &res.inner_iterations);
  const GridVector& final_state = res.state.levels.back();
  res.kappa = space_time_norm(res.control) / z0_norm;
  res.final_ratio = grid_norm(final_state, sys.grid.cell_weight()) / z0_norm;
  res.optimality_residual =
      grid_norm(final_state + cfg.epsilon * p, sys.grid.cell_weight()) / z0_norm;
  return res;
}

namespace {

struct ObservedForms {
  // Terminal energy |z(T)|^2 and observed energy sum_k tau s_k |w z^k|^2, both
  // carrying the h^dim weight.
  double terminal = 0.0;
  double observed = 0.0;
};

ObservedForms probe_forms(const HeatSystem& sys, const GridVector& z0) {
  const SpaceTimeField z = forward_solve(sys.lap, sys.potential, sys.grid, z0,
                                         SpaceTimeField{}, sys.lin, sys.time);
  ObservedForms f;
  f.terminal = sys.grid.cell_weight() * z.levels.back().squaredNorm();
  const double obs = space_time_norm(z, &sys.mask, &sys.active);
  f.observed = obs * obs;
  return f;
}

std::vector<std::pair<std::string, GridVector>> probe_family(const HeatSystem& sys) {
  const SpatialGrid& g = sys.grid;
  const int n = g.node_count();
  std::vector<std::pair<std::string, GridVector>> probes;
  probes.emplace_back("constant", GridVector::Ones(n));

  {
    InitialDataRecipe bump;
    bump.name = "bump";
    double min_extent = g.box().extent(0, g.spec());
    if (g.dim() == 2) min_extent = std::min(min_extent, g.box().extent(1, g.spec()));
    bump.radius = 0.25 * min_extent;
    probes.emplace_back("bump", sample_initial_data(bump, g, g.box()));
  }

  // First four Dirichlet eigenmodes of the box, ordered by eigenvalue.
  struct Mode {
    double lambda;
    int kx, ky;
  };
  std::vector<Mode> modes;
  const double Lx = g.box().extent(0, g.spec());
  if (g.dim() == 1) {
    for (int k = 1; k <= 4; ++k)
      modes.push_back({static_cast<double>(k) * static_cast<double>(k) / (Lx * Lx), k, 0});
  } else {
    const double Ly = g.box().extent(1, g.spec());
    for (int kx = 1; kx <= 3; ++kx)
      for (int ky = 1; ky <= 3; ++ky)
        modes.push_back({static_cast<double>(kx * kx) / (Lx * Lx) +
                             static_cast<double>(ky * ky) / (Ly * Ly),
                         kx, ky});
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
      if (a.lambda != b.lambda) return a.lambda < b.lambda;
      if (a.kx != b.kx) return a.kx < b.kx;
      return a.ky < b.ky;
    });
    modes.resize(4);
  }
  for (std::size_t mi = 0; mi < std::min<std::size_t>(4, modes.size()); ++mi) {
    const Mode& m = modes[mi];
    GridVector v(n);
    const double x_lo = static_cast<double>(g.box().lo[0]) * g.spec().cube_side();
    const double y_lo =
        g.dim() == 2 ? static_cast<double>(g.box().lo[1]) * g.spec().cube_side() : 0.0;
    const double Ly = g.dim() == 2 ? g.box().extent(1, g.spec()) : 1.0;
    for (int j = 0; j < n; ++j) {
      const Point p = g.position(j);
      double val = std::sin(static_cast<double>(m.kx) * M_PI * (p[0] - x_lo) / Lx);
      if (g.dim() == 2)
        val *= std::sin(static_cast<double>(m.ky) * M_PI * (p[1] - y_lo) / Ly);
      v[j] = val;
    }
    probes.emplace_back("eig" + std::to_string(mi + 1), std::move(v));
  }
  return probes;
}

}  // namespace

ObservabilityEstimate estimate_observability_constant(const HeatSystem& sys,
                                                      const ObservabilityPolicy& policy) {
  ObservabilityEstimate est;
  const int n = sys.grid.node_count();
  if (sys.mask.empty()) {
    est.status = SolveStatus::Unobservable;
    return est;
  }

  for (auto& [name, probe] : probe_family(sys)) {
    const ObservedForms f = probe_forms(sys, probe);
    if (f.observed <= 0.0) {
      if (f.terminal > 0.0) {
        est.status = SolveStatus::Unobservable;
        return est;
      }
      continue;
    }
    const double ratio = f.terminal / f.observed;
    est.probes.emplace_back(name, ratio);
    if (ratio > est.value) {
      est.value = ratio;
      est.attained_by = name;
    }
  }

  if (!policy.power_iteration) return est;

  // Power iteration on the pencil A x = lambda B x with A the terminal-energy
  // form and B the observed form: x <- B^{-1} A x, Rayleigh quotient reported.
  StepSolver solver(sys.lap, sys.potential, sys.time.tau(), sys.lin, sys.time.K);
  const double tau = sys.time.tau();

  auto apply_A = [&](const GridVector& x) {
    const SpaceTimeField z = forward_solve(sys.lap, sys.potential, sys.grid, x,
                                           SpaceTimeField{}, sys.lin, sys.time);
    const SpaceTimeField back = backward_adjoint_solve(sys.lap, sys.potential, sys.grid,
                                                       z.levels.back(), sys.lin, sys.time);
    return back.levels.front();
  };
  auto masked = [&](const GridVector& v) {
    GridVector w = GridVector::Zero(n);
    for (int j = 0; j < n; ++j) {
      if (sys.mask.w[static_cast<std::size_t>(j)]) w[j] = v[j];
    }
    return w;
  };
  auto apply_B = [&](const GridVector& x) {
    const SpaceTimeField z = forward_solve(sys.lap, sys.potential, sys.grid, x,
                                           SpaceTimeField{}, sys.lin, sys.time);
    GridVector acc = GridVector::Zero(n);
    GridVector tmp(n);
    for (int k = sys.time.K - 1; k >= 1; --k) {
      if (sys.active[static_cast<std::size_t>(k)])
        acc += tau * masked(z.levels[static_cast<std::size_t>(k)]);
      solver.solve(k - 1, acc, tmp);
      acc.swap(tmp);
    }
    if (sys.active[0]) acc += tau * masked(z.levels[0]);
    return acc;
  };
  auto solve_B = [&](const GridVector& b) {
    // Unpreconditioned CG; B is only semidefinite in degenerate geometries, so
    // breakdown returns the best iterate (the estimate stays a lower bound).
    const int max_it =
        policy.inner_max_iterations ? policy.inner_max_iterations : std::max(500, 2 * n);
    GridVector x = GridVector::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0.0) return x;
    GridVector r = b;
    GridVector q = r;
    double rr = r.squaredNorm();
    for (int it = 0; it < max_it && std::sqrt(rr) > policy.inner_tolerance * bnorm; ++it) {
      const GridVector Bq = apply_B(q);
      const double qBq = q.dot(Bq);
      if (!(qBq > 0.0)) break;
      const double alpha = rr / qBq;
      x += alpha * q;
      r -= alpha * Bq;
      const double rr_next = r.squaredNorm();
      q = r + (rr_next / rr) * q;
      rr = rr_next;
    }
    return x;
  };

  const CounterRng rng(policy.seed);
  GridVector x(n);
  for (int j = 0; j < n; ++j) x[j] = rng.symmetric(0xB0B0, static_cast<std::uint64_t>(j));
  x /= x.norm();
  double rho_prev = 0.0;
  double rho_power = -1.0;
  for (int it = 0; it < policy.power_iterations; ++it) {
    const GridVector Ax = apply_A(x);
    const GridVector Bx = apply_B(x);
    const double xBx = x.dot(Bx);
    if (!(xBx > 0.0)) break;
    const double rho = x.dot(Ax) / xBx;
    rho_power = std::max(rho_power, rho);
    if (rho > est.value) {
      est.value = rho;
      est.attained_by = "power";
    }
    if (it > 0 && std::abs(rho - rho_prev) <= 1e-12 * std::abs(rho)) break;
    rho_prev = rho;
    GridVector y = solve_B(Ax);
    const double ynorm = y.norm();
    if (!(ynorm > 0.0)) break;
    x = y / ynorm;
  }
  if (rho_power >= 0.0) {
    est.probes.emplace_back("power", rho_power);
  }
  return est;
}

}  // namespace heatlab
