#pragma once

#include <optional>
#include <vector>

#include "heatlab/discretization.hpp"
#include "heatlab/geometry.hpp"

namespace heatlab {

// Ball B_r(x0) and Gaussian regularization for the frequency function
//   N(t) = int |grad u|^2 G / int |u|^2 G,
//   G(x, t) = (T - t + lambda)^(-dim/2) * exp(-|x - x0|^2 / (4 (T - t + lambda))).
struct FrequencyParams {
  Point x0{};
  double r = 0.0;
  double lambda = 0.0;

  void validate() const;
};

// Discrete frequency function at time level k: Rayleigh quotient of centered
// differences against the Gaussian weight over interior nodes of the ball
// (boundary neighbors contribute their Dirichlet zero). Empty quotient
// (zero denominator) is signalled as nullopt.
std::optional<double> frequency_function(const SpaceTimeField& u, const SpatialGrid& grid,
                                         const FrequencyParams& p, int k);

// Discrete-derivative tolerance: tol(h, tau) = c * (h + tau) / lambda. The
// constant is calibrated once on the decaying-mode study in the test suite and
// frozen here.
inline constexpr double kFrequencyTolCalibration = 1.0;
double frequency_tolerance(double h, double tau, double lambda);

struct FrequencyPair {
  double t = 0.0;          // left level time
  double derivative = 0.0; // (N_{k+1} - N_k) / tau
  double bound = 0.0;      // N_k / (T - t_k + lambda) + source quotient
  double violation = 0.0;  // max(0, derivative - bound)
  bool defined = false;
};

struct FrequencyReport {
  std::vector<std::optional<double>> values;  // N at levels 0..K
  std::vector<FrequencyPair> pairs;           // between consecutive levels
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // max_violation <= tolerance over defined pairs
};

// Checks the discrete analog of the parabolic frequency-function monotonicity
//   dN/dt <= N / (T - t + lambda) + int |(d_t - Lap) u|^2 G / int |u|^2 G,
// where for solutions of d_t u - Lap u + a u = 0 the right-hand quotient is
// the potential term |a u|^2. Pass a null potential for caloric fields.
FrequencyReport frequency_monotonicity_check(const SpaceTimeField& u, const SpatialGrid& grid,
                                             const FrequencyParams& p,
                                             const PotentialField* a = nullptr);

// Two-ball interpolation data at the final time:
//   lhs   = int_{B_R} |phi(T)|^2
//   mid   = int_{T/2}^{T} int_{Q_{2 R0}} |phi|^2,  R0 = (1 + 2 delta) R
//   small = int_{B_r} |phi(T)|^2
// and the exponent gamma_hat solving lhs = mid^g * (2 small)^(1-g).
struct InterpolationReport {
  double lhs = 0.0;
  double mid = 0.0;
  double small = 0.0;
  double R0 = 0.0;
  double gamma_hat = 0.0;
  bool gamma_defined = false;
  bool degenerate = false;  // r >= R: lhs <= 2*small holds, exponent free
};

InterpolationReport interpolation_report(const SpaceTimeField& phi, const SpatialGrid& grid,
                                         const Point& x0, double r, double R, double delta);

// Global variant: total masses at 0 and T and the observed terminal mass on
// the control region, with the implied exponent theta_hat solving
//   total_T = total_0^theta * observed_T^(1-theta).
struct GlobalInterpolationReport {
  double total_T = 0.0;
  double total_0 = 0.0;
  double observed_T = 0.0;
  double theta_hat = 0.0;
  bool theta_defined = false;
};

GlobalInterpolationReport global_interpolation_report(const SpaceTimeField& phi,
                                                      const SpatialGrid& grid,
                                                      const NodeMask& mask);

}  // namespace heatlab
