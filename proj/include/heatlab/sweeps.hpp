#pragma once

#include <string>
#include <vector>

#include "heatlab/fixed_point.hpp"
#include "heatlab/geometry.hpp"
#include "heatlab/hum.hpp"
#include "heatlab/initial_data.hpp"
#include "heatlab/nonlinearity.hpp"
#include "heatlab/time_set.hpp"

namespace heatlab {

// Shared driver configuration: a family of nested centered boxes (cells per
// axis from sizes, strictly increasing) over one lattice, one grid density,
// and one time set. Initial data is anchored to the smallest box so that
// restriction to any member is plain sampling.
struct SweepConfig {
  LatticeSpec spec;
  std::vector<long long> sizes;
  long long reference = 0;  // limit check replay box; 0 = twice the largest size
  int m = 16;
  TimeSet E;
  TimeGrid time;
  InitialDataRecipe z0;
  Nonlinearity f = Nonlinearity::zero();
  double constant_potential = 0.0;  // linear runs only (f identically zero)
  double ball_radius = 0.0;         // comparison ball; 0 = 80% of smallest half-extent
  FixedPointConfig fp;
  LinearSolveConfig lin;

  void validate() const;
  long long reference_or_default() const;
};

struct CostRow {
  long long n = 0;
  double extent = 0.0;
  int nodes = 0;
  double kappa = 0.0;
  double final_ratio = 0.0;
  int fp_iters = 0;
  long long cg_iters = 0;
  double wall_ms = 0.0;
  SolveStatus status = SolveStatus::Ok;
  std::vector<double> iteration_kappas;  // one entry per fixed-point iteration
};

struct CostCurve {
  std::vector<CostRow> rows;
};

// Control cost across the domain family. A failing domain is recorded with
// its status and the sweep continues. wall_ms stays 0 unless timing is
// requested, so default output is bitwise reproducible.
CostCurve cost_sweep(const SweepConfig& cfg, bool timing = false);

struct ConvergencePoint {
  long long n = 0;
  double extent = 0.0;
  int nodes = 0;
  double e_n = 0.0;    // wellposedness: space-time distance to the reference run
  double rho_n = 0.0;  // limit check: terminal ratio on the reference domain
  SolveStatus status = SolveStatus::Ok;
};

struct ConvergenceReport {
  long long reference_n = 0;
  std::vector<ConvergencePoint> points;
};

// Uncontrolled semilinear runs y' + A y + f(y) = g across the family,
// compared on a fixed ball inside the smallest box against the run on the
// largest box. Source recipes: "zero", "bump" (steady), "bump_gated" (bump
// switched on inside E). cfg.z0 doubles as the initial state y0.
ConvergenceReport wellposedness_sweep(const SweepConfig& cfg, const std::string& source);

// Controls computed on each tested box, extended by zero and replayed on the
// reference box: rho_n measures how well the small-domain control steers the
// large-domain semilinear state. With reference equal to a tested size, that
// point reproduces the domain's own verified ratio exactly.
ConvergenceReport limit_control_check(const SweepConfig& cfg);

}  // namespace heatlab
