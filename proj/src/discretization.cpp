#include "heatlab/discretization.hpp"

#include <cmath>
#include <stdexcept>

namespace heatlab {

double grid_norm(const GridVector& v, double cell_weight) {
  return std::sqrt(cell_weight * v.squaredNorm());
}

double space_time_norm(const SpaceTimeField& v, const NodeMask* mask,
                       const std::vector<std::uint8_t>* steps) {
  if (v.empty()) return 0.0;
  const int K = v.steps();
  if (K < 1) throw std::invalid_argument("space_time_norm: field needs at least one step");
  if (mask && static_cast<int>(mask->w.size()) != v.levels[0].size())
    throw std::invalid_argument("space_time_norm: mask/field size mismatch");
  if (steps && static_cast<int>(steps->size()) != K)
    throw std::invalid_argument("space_time_norm: step mask/field size mismatch");
  double acc = 0.0;
  for (int k = 0; k < K; ++k) {
    if (steps && !(*steps)[static_cast<std::size_t>(k)]) continue;
    const GridVector& lv = v.levels[static_cast<std::size_t>(k)];
    double s = 0.0;
    if (mask) {
      for (int j = 0; j < lv.size(); ++j) {
        if (mask->w[static_cast<std::size_t>(j)]) s += lv[j] * lv[j];
      }
    } else {
      s = lv.squaredNorm();
    }
    acc += s;
  }
  return std::sqrt(acc * v.cell_weight * v.tau);
}

DiscreteLaplacian::DiscreteLaplacian(const SpatialGrid& grid)
    : dim_(grid.dim()), h_(grid.h()), nx_(grid.axis_nodes(0)),
      ny_(dim_ == 2 ? grid.axis_nodes(1) : 1) {}

void DiscreteLaplacian::apply(const GridVector& x, GridVector& y) const {
  if (x.size() != n()) throw std::invalid_argument("laplacian: vector size mismatch");
  y.resize(x.size());
  const double ih2 = 1.0 / (h_ * h_);
  if (dim_ == 1) {
    for (int j = 0; j < nx_; ++j) {
      double v = 2.0 * x[j];
      if (j > 0) v -= x[j - 1];
      if (j + 1 < nx_) v -= x[j + 1];
      y[j] = v * ih2;
    }
    return;
  }
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      const int j = ix + nx_ * iy;
      double v = 4.0 * x[j];
      if (ix > 0) v -= x[j - 1];
      if (ix + 1 < nx_) v -= x[j + 1];
      if (iy > 0) v -= x[j - nx_];
      if (iy + 1 < ny_) v -= x[j + nx_];
      y[j] = v * ih2;
    }
  }
}

GridVector DiscreteLaplacian::apply(const GridVector& x) const {
  GridVector y;
  apply(x, y);
  return y;
}

DiscreteLaplacian assemble_laplacian(const SpatialGrid& grid) { return DiscreteLaplacian(grid); }

PotentialField PotentialField::zero(int n) {
  return constant_in_time(GridVector::Zero(n));
}

PotentialField PotentialField::constant_in_time(GridVector a) {
  PotentialField p;
  p.sup_norm_ = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  p.values_.push_back(std::move(a));
  return p;
}

PotentialField PotentialField::per_step(std::vector<GridVector> a) {
  if (a.empty()) throw std::invalid_argument("potential: need at least one step");
  PotentialField p;
  p.sup_norm_ = 0.0;
  for (const auto& v : a) {
    if (v.size() != a[0].size()) throw std::invalid_argument("potential: ragged step values");
    if (v.size()) p.sup_norm_ = std::max(p.sup_norm_, v.cwiseAbs().maxCoeff());
  }
  p.values_ = std::move(a);
  return p;
}

void LinearSolveConfig::validate(int node_count) const {
  if (!(tolerance > 0.0) || tolerance > 1e-4)
    throw std::invalid_argument("linear solve tolerance must be in (0, 1e-4]");
  if (max_iterations != 0 && max_iterations < node_count)
    throw std::invalid_argument("linear solve max_iterations must cover the node count");
}

StepSolver::StepSolver(const DiscreteLaplacian& A, const PotentialField& a, double tau,
                       const LinearSolveConfig& cfg, int K)
    : A_(A), a_(a), tau_(tau), cfg_(cfg), K_(K) {
  cfg.validate(A.n());
  if (a.node_count() != A.n()) throw std::invalid_argument("potential/grid size mismatch");
  if (!a.is_time_constant() && a.step_count() != K)
    throw std::invalid_argument("potential must cover every time step");
  direct_ = cfg.method == LinearSolveConfig::Method::DirectBanded ||
            (cfg.method == LinearSolveConfig::Method::Auto && A.dim() == 1);
  if (direct_ && A.dim() != 1)
    throw std::invalid_argument("banded factorization is only available in 1D");
  max_iters_ = cfg.max_iterations ? cfg.max_iterations : std::max(1000, 2 * A.n());
  if (direct_) {
    const int slots = a.is_time_constant() ? 1 : K;
    pivots_.resize(static_cast<std::size_t>(slots));
    for (int s = 0; s < slots; ++s) factor_1d(s, a.at_step(s));
  }
}

void StepSolver::factor_1d(int slot, const GridVector& ak) {
  // LDL^T of the symmetric tridiagonal I + tau*A + tau*diag(a_k); the
  // off-diagonal -tau/h^2 is constant so only pivots are stored.
  const int n = A_.n();
  const double e = tau_ * A_.off_diagonal();
  GridVector p(n);
  for (int j = 0; j < n; ++j) {
    double d = 1.0 + tau_ * (A_.diagonal() + ak[j]);
    if (j > 0) d -= e * e / p[j - 1];
    if (!(d > 0.0))
      throw std::runtime_error("step matrix lost positive definiteness; reduce tau");
    p[j] = d;
  }
  pivots_[static_cast<std::size_t>(slot)] = std::move(p);
}

void StepSolver::solve_1d(int slot, const GridVector& b, GridVector& x) const {
  const GridVector& p = pivots_[static_cast<std::size_t>(slot)];
  const int n = A_.n();
  const double e = tau_ * A_.off_diagonal();
  x.resize(n);
  x[0] = b[0];
  for (int j = 1; j < n; ++j) x[j] = b[j] - (e / p[j - 1]) * x[j - 1];
  x[n - 1] /= p[n - 1];
  for (int j = n - 2; j >= 0; --j) x[j] = x[j] / p[j] - (e / p[j]) * x[j + 1];
}

void StepSolver::apply_step_matrix(int k, const GridVector& x, GridVector& y) const {
  A_.apply(x, y);
  const GridVector& ak = a_.at_step(a_.is_time_constant() ? 0 : k);
  y = x + tau_ * (y + ak.cwiseProduct(x));
}

void StepSolver::solve_cg(int k, const GridVector& b, GridVector& x) const {
  const int n = A_.n();
  const GridVector& ak = a_.at_step(a_.is_time_constant() ? 0 : k);
  GridVector dinv(n);
  for (int j = 0; j < n; ++j) {
    const double d = 1.0 + tau_ * (A_.diagonal() + ak[j]);
    if (!(d > 0.0))
      throw std::runtime_error("step matrix lost positive definiteness; reduce tau");
    dinv[j] = 1.0 / d;
  }
  x = GridVector::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return;
  GridVector r = b;
  GridVector z = dinv.cwiseProduct(r);
  GridVector q = z;
  GridVector Mq(n);
  double rz = r.dot(z);
  for (int it = 0; it < max_iters_; ++it) {
    if (r.norm() <= cfg_.tolerance * bnorm) return;
    apply_step_matrix(k, q, Mq);
    const double qMq = q.dot(Mq);
    if (!(qMq > 0.0)) throw std::runtime_error("CG breakdown: step matrix not positive definite");
    const double alpha = rz / qMq;
    x += alpha * q;
    r -= alpha * Mq;
    ++inner_iterations_;
    z = dinv.cwiseProduct(r);
    const double rz_next = r.dot(z);
    q = z + (rz_next / rz) * q;
    rz = rz_next;
  }
  if (r.norm() > cfg_.tolerance * bnorm)
    throw std::runtime_error("CG did not reach tolerance within max iterations");
}

void StepSolver::solve(int k, const GridVector& b, GridVector& x) const {
  if (direct_) {
    solve_1d(a_.is_time_constant() ? 0 : k, b, x);
  } else {
    solve_cg(k, b, x);
  }
}

namespace {

void check_shapes(const DiscreteLaplacian& A, const SpatialGrid& grid, const GridVector& z0,
                  const SpaceTimeField& source, const TimeGrid& tg) {
  if (A.n() != grid.node_count()) throw std::invalid_argument("laplacian/grid size mismatch");
  if (z0.size() != A.n()) throw std::invalid_argument("initial data/grid size mismatch");
  if (!source.empty()) {
    if (source.steps() < tg.K)
      throw std::invalid_argument("source must provide levels 0..K-1");
    if (source.levels[0].size() != A.n())
      throw std::invalid_argument("source/grid size mismatch");
  }
}

}  // namespace

SpaceTimeField forward_solve(const DiscreteLaplacian& A, const PotentialField& a,
                             const SpatialGrid& grid, const GridVector& z0,
                             const SpaceTimeField& source, const LinearSolveConfig& cfg,
                             const TimeGrid& tg, long long* inner_iterations) {
  check_shapes(A, grid, z0, source, tg);
  StepSolver solver(A, a, tg.tau(), cfg, tg.K);
  SpaceTimeField z;
  z.cell_weight = grid.cell_weight();
  z.tau = tg.tau();
  z.levels.resize(static_cast<std::size_t>(tg.K) + 1);
  z.levels[0] = z0;
  GridVector rhs;
  for (int k = 0; k < tg.K; ++k) {
    rhs = z.levels[static_cast<std::size_t>(k)];
    if (!source.empty()) rhs += tg.tau() * source.levels[static_cast<std::size_t>(k)];
    solver.solve(k, rhs, z.levels[static_cast<std::size_t>(k) + 1]);
  }
  if (inner_iterations) *inner_iterations += solver.inner_iterations();
  return z;
}

SpaceTimeField backward_adjoint_solve(const DiscreteLaplacian& A, const PotentialField& a,
                                      const SpatialGrid& grid, const GridVector& pT,
                                      const LinearSolveConfig& cfg, const TimeGrid& tg,
                                      long long* inner_iterations) {
  check_shapes(A, grid, pT, SpaceTimeField{}, tg);
  StepSolver solver(A, a, tg.tau(), cfg, tg.K);
  SpaceTimeField phi;
  phi.cell_weight = grid.cell_weight();
  phi.tau = tg.tau();
  phi.levels.resize(static_cast<std::size_t>(tg.K) + 1);
  phi.levels[static_cast<std::size_t>(tg.K)] = pT;
  for (int k = tg.K - 1; k >= 0; --k) {
    solver.solve(k, phi.levels[static_cast<std::size_t>(k) + 1],
                 phi.levels[static_cast<std::size_t>(k)]);
  }
  if (inner_iterations) *inner_iterations += solver.inner_iterations();
  return phi;
}

SpaceTimeField semilinear_forward_solve(const DiscreteLaplacian& A, const Nonlinearity& f,
                                        const SpatialGrid& grid, const GridVector& z0,
                                        const SpaceTimeField& source,
                                        const LinearSolveConfig& cfg, const TimeGrid& tg,
                                        long long* inner_iterations) {
  check_shapes(A, grid, z0, source, tg);
  if (!(tg.tau() * f.lipschitz() < 1.0))
    throw std::invalid_argument("semilinear solve needs tau * Lipschitz(f) < 1; refine K");
  const PotentialField none = PotentialField::zero(A.n());
  StepSolver solver(A, none, tg.tau(), cfg, tg.K);
  SpaceTimeField z;
  z.cell_weight = grid.cell_weight();
  z.tau = tg.tau();
  z.levels.resize(static_cast<std::size_t>(tg.K) + 1);
  z.levels[0] = z0;
  GridVector rhs(A.n());
  for (int k = 0; k < tg.K; ++k) {
    const GridVector& zk = z.levels[static_cast<std::size_t>(k)];
    for (int j = 0; j < A.n(); ++j) rhs[j] = zk[j] - tg.tau() * f(zk[j]);
    if (!source.empty()) rhs += tg.tau() * source.levels[static_cast<std::size_t>(k)];
    solver.solve(k, rhs, z.levels[static_cast<std::size_t>(k) + 1]);
  }
  if (inner_iterations) *inner_iterations += solver.inner_iterations();
  return z;
}

}  // namespace heatlab
