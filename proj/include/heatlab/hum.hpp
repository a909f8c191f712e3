#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heatlab/discretization.hpp"
#include "heatlab/geometry.hpp"
#include "heatlab/rng.hpp"
#include "heatlab/time_set.hpp"

namespace heatlab {

// Everything a control solve needs: interior grid, Laplacian, control-region
// mask, active-step flags for the time set, potential, and solver settings.
struct HeatSystem {
  SpatialGrid grid;
  DiscreteLaplacian lap;
  NodeMask mask;
  TimeGrid time;
  std::vector<std::uint8_t> active;
  PotentialField potential;
  LinearSolveConfig lin;

  HeatSystem(SpatialGrid grid, const TimeSet& E, const TimeGrid& time, PotentialField a,
             LinearSolveConfig lin = {});
};

struct HumConfig {
  double epsilon = 1e-8;    // penalty on the dual variable, in (0, 1]
  double tolerance = 1e-10; // outer CG relative residual, at most 1e-8
  int max_iterations = 0;   // 0 = auto: max(2000, 20 * node count)

  void validate() const;
};

enum class SolveStatus { Ok, Unobservable, NoConvergence };

const char* to_string(SolveStatus status);

struct HumResult {
  SolveStatus status = SolveStatus::Ok;
  GridVector p_hat;        // dual minimizer of (Gramian + eps I) p = -z_free(T)
  SpaceTimeField control;  // u = mask * active * phi, phi the backward solve of p_hat
  SpaceTimeField state;    // controlled trajectory from z0
  double kappa = 0.0;            // ||u||_{L2((0,T) x omega)} / ||z0||_{L2}
  double final_ratio = 0.0;      // ||z(T)|| / ||z0||
  int iterations = 0;            // outer CG iterations
  double optimality_residual = 0.0;  // ||z(T) + eps * p_hat|| / ||z0||
  long long inner_iterations = 0;    // 2D inner CG iterations, 0 for direct solves
};

// Controllability Gramian applied to a final-time dual state: backward solve
// from p_T, then forward solve from zero driven by the masked backward field.
// Symmetric positive semidefinite because the backward map is the exact
// transpose of the forward one.
GridVector gramian_apply(const HeatSystem& sys, const GridVector& pT,
                         long long* inner_iterations = nullptr);

// Penalized duality solve: CG on (Gramian + eps I) p_hat = -z_free(T), control
// read off the backward field of p_hat. At the optimum z(T) = -eps * p_hat up
// to the CG residual, which optimality_residual reports.
HumResult solve_penalized_hum(const HeatSystem& sys, const GridVector& z0, const HumConfig& cfg);

struct ObservabilityPolicy {
  bool power_iteration = true;
  int power_iterations = 30;
  double inner_tolerance = 1e-8;  // CG solves with the observation Gramian
  int inner_max_iterations = 0;   // 0 = auto
  std::uint64_t seed = 1;
};

struct ObservabilityEstimate {
  SolveStatus status = SolveStatus::Ok;
  double value = 0.0;        // sup ||z(T)||^2 / ||z||^2_{observed}
  std::string attained_by;   // probe name or "power"
  std::vector<std::pair<std::string, double>> probes;
};

// Lower-bound estimate of the observability constant
//   ||z(T)||^2 <= C * sum_k tau * s_k * ||z^k||^2_{omega}
// over a fixed probe family (constant, centered bump, first grid eigenmodes),
// optionally sharpened by seeded power iteration on the generalized Rayleigh
// quotient. A probe with positive terminal mass and zero observation flags the
// configuration unobservable.
ObservabilityEstimate estimate_observability_constant(const HeatSystem& sys,
                                                      const ObservabilityPolicy& policy);

}  // namespace heatlab
