#pragma once

#include <vector>

#include "heatlab/discretization.hpp"
#include "heatlab/hum.hpp"
#include "heatlab/nonlinearity.hpp"

namespace heatlab {

// Linearizing potential of the semilinear term along a trajectory: per step,
// a_k(x) = f(m)/m at the midpoint state m = (xi^k + xi^{k+1})/2, continued by
// f'(0) where |m| <= 1e-12 * sup|xi|. Bounded by Lipschitz(f) pointwise, and
// a(xi) * xi = f(xi) holds identically by construction.
PotentialField quotient_potential(const SpaceTimeField& xi, const Nonlinearity& f);

struct FixedPointConfig {
  double tolerance = 1e-6;  // relative change of successive controlled states
  int max_iterations = 50;
  HumConfig hum;

  void validate() const;
};

struct FixedPointResult {
  SolveStatus status = SolveStatus::Ok;
  SpaceTimeField control;
  SpaceTimeField state;            // last linearized controlled trajectory
  std::vector<double> kappas;      // control cost per iteration
  std::vector<double> residuals;   // successive relative state changes
  int iterations = 0;              // linearized control solves performed
  double kappa = 0.0;              // cost of the final control
  double final_ratio = 0.0;        // terminal ratio of the last linearized solve
  double verified_ratio = 0.0;     // terminal ratio on the true semilinear dynamics
  int outer_cg_iterations = 0;     // summed over all control solves
  long long inner_iterations = 0;
  double state_h1_seminorm = 0.0;      // space-time H1 seminorm of the last state
  double state_time_diff_norm = 0.0;   // L2 norm of its discrete time derivative
};

// Picard iteration for null control of dz/dt + A z + f(z) = control:
// linearize through the quotient potential, solve the penalized control
// problem, re-linearize along the controlled state, and stop when successive
// states agree to tolerance. f identically zero short-circuits to one linear
// solve. Non-convergence returns the last iterate flagged, never throws.
// The final control is always re-checked on the true semilinear dynamics.
FixedPointResult fixed_point_solve(const HeatSystem& sys, const Nonlinearity& f,
                                   const GridVector& z0, const FixedPointConfig& cfg);

// Terminal ratio ||z(T)|| / ||z0|| of the semilinear equation driven by the
// given control; ||z0|| = 0 returns 0 by convention.
double verify_null(const HeatSystem& sys, const Nonlinearity& f, const GridVector& z0,
                   const SpaceTimeField& control);

}  // namespace heatlab
