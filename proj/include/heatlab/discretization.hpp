#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "heatlab/geometry.hpp"
#include "heatlab/nonlinearity.hpp"
#include "heatlab/time_set.hpp"

namespace heatlab {

using GridVector = Eigen::VectorXd;

// L2 norm with the grid quadrature weight: sqrt(h^dim * sum v_j^2).
double grid_norm(const GridVector& v, double cell_weight);

// Grid function on interior nodes at time levels 0..K. Carries its quadrature
// weights so norms need no extra context.
struct SpaceTimeField {
  std::vector<GridVector> levels;
  double cell_weight = 0.0;  // h^dim
  double tau = 0.0;

  bool empty() const { return levels.empty(); }
  int steps() const { return static_cast<int>(levels.size()) - 1; }
};

// Discrete space-time L2 norm. Step k contributes tau * |masked v at level k|^2,
// i.e. fields are sampled at the beginning of each step; an active-step mask
// and a node mask restrict the sum when given.
double space_time_norm(const SpaceTimeField& v, const NodeMask* mask = nullptr,
                       const std::vector<std::uint8_t>* steps = nullptr);

// Standard (2*dim+1)-point Laplacian on interior nodes with homogeneous
// Dirichlet boundary rows eliminated. Symmetric positive definite.
class DiscreteLaplacian {
 public:
  explicit DiscreteLaplacian(const SpatialGrid& grid);

  int dim() const { return dim_; }
  double h() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int n() const { return nx_ * ny_; }
  double diagonal() const { return 2.0 * static_cast<double>(dim_) / (h_ * h_); }
  double off_diagonal() const { return -1.0 / (h_ * h_); }

  void apply(const GridVector& x, GridVector& y) const;
  GridVector apply(const GridVector& x) const;

 private:
  int dim_;
  double h_;
  int nx_;
  int ny_;
};

DiscreteLaplacian assemble_laplacian(const SpatialGrid& grid);

// Bounded potential a(x, t), one value per interior node, sampled per time
// step (at step midpoints when built from a function of t). Either constant
// in time (one vector) or one vector per step.
class PotentialField {
 public:
  static PotentialField zero(int n);
  static PotentialField constant_in_time(GridVector a);
  static PotentialField per_step(std::vector<GridVector> a);
  template <typename F>  // F: (Point, double t) -> double
  static PotentialField sample(const SpatialGrid& grid, const TimeGrid& tg, F&& f) {
    std::vector<GridVector> vals(static_cast<std::size_t>(tg.K));
    for (int k = 0; k < tg.K; ++k) {
      const double t = (static_cast<double>(k) + 0.5) * tg.tau();
      GridVector v(grid.node_count());
      for (int j = 0; j < grid.node_count(); ++j) v[j] = f(grid.position(j), t);
      vals[static_cast<std::size_t>(k)] = std::move(v);
    }
    return per_step(std::move(vals));
  }

  bool is_time_constant() const { return values_.size() == 1; }
  int node_count() const { return values_.empty() ? 0 : static_cast<int>(values_[0].size()); }
  int step_count() const { return static_cast<int>(values_.size()); }  // 1 = all steps
  const GridVector& at_step(int k) const {
    return is_time_constant() ? values_[0] : values_[static_cast<std::size_t>(k)];
  }
  double sup_norm() const { return sup_norm_; }

 private:
  std::vector<GridVector> values_;
  double sup_norm_ = 0.0;
};

// How the per-step linear systems (I + tau*(A + diag(a_k))) x = b are solved.
struct LinearSolveConfig {
  enum class Method { Auto, DirectBanded, ConjugateGradient };

  Method method = Method::Auto;  // Auto: banded factorization in 1D, CG in 2D
  double tolerance = 1e-10;      // CG relative residual
  int max_iterations = 0;        // 0 = auto: max(1000, 2 * node count)

  void validate(int node_count) const;
};

// Per-step implicit Euler system solver. 1D factorizations are computed once
// per distinct step matrix and cached; 2D uses Jacobi-preconditioned CG.
class StepSolver {
 public:
  StepSolver(const DiscreteLaplacian& A, const PotentialField& a, double tau,
             const LinearSolveConfig& cfg, int K);

  void solve(int k, const GridVector& b, GridVector& x) const;
  long long inner_iterations() const { return inner_iterations_; }

 private:
  const DiscreteLaplacian& A_;
  const PotentialField& a_;
  double tau_;
  LinearSolveConfig cfg_;
  int K_;
  bool direct_;
  int max_iters_;
  // Cached LDL^T pivots for the symmetric tridiagonal 1D matrices; one column
  // when the potential is constant in time, else one per step.
  std::vector<GridVector> pivots_;
  mutable long long inner_iterations_ = 0;

  void factor_1d(int slot, const GridVector& ak);
  void solve_1d(int slot, const GridVector& b, GridVector& x) const;
  void solve_cg(int k, const GridVector& b, GridVector& x) const;
  void apply_step_matrix(int k, const GridVector& x, GridVector& y) const;
};

// Implicit Euler march of dz/dt + A z + a z = source from z0:
//   (I + tau*A + tau*diag(a_k)) z^{k+1} = z^k + tau * source^k.
// source may be empty (zero); otherwise it is read at levels 0..K-1.
SpaceTimeField forward_solve(const DiscreteLaplacian& A, const PotentialField& a,
                             const SpatialGrid& grid, const GridVector& z0,
                             const SpaceTimeField& source, const LinearSolveConfig& cfg,
                             const TimeGrid& tg, long long* inner_iterations = nullptr);

// Exact transpose of the forward propagator: the same per-step solves applied
// in reverse order, phi^K = pT, phi^k = (I + tau*A + tau*diag(a_k))^{-1} phi^{k+1}.
// Guarantees <forward(z0)(T), pT> = <z0, backward(pT)(0)> to solver precision.
SpaceTimeField backward_adjoint_solve(const DiscreteLaplacian& A, const PotentialField& a,
                                      const SpatialGrid& grid, const GridVector& pT,
                                      const LinearSolveConfig& cfg, const TimeGrid& tg,
                                      long long* inner_iterations = nullptr);

// IMEX splitting for dz/dt + A z + f(z) = source: diffusion implicit,
// nonlinearity explicit,
//   (I + tau*A) z^{k+1} = z^k - tau*f(z^k) + tau*source^k.
// Requires tau * Lipschitz(f) < 1 for the explicit part to be contractive.
SpaceTimeField semilinear_forward_solve(const DiscreteLaplacian& A, const Nonlinearity& f,
                                        const SpatialGrid& grid, const GridVector& z0,
                                        const SpaceTimeField& source,
                                        const LinearSolveConfig& cfg, const TimeGrid& tg,
                                        long long* inner_iterations = nullptr);

}  // namespace heatlab
