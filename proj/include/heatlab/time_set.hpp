#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace heatlab {

// Uniform partition of (0, T) into K implicit Euler steps.
struct TimeGrid {
  double T;
  int K;

  TimeGrid(double T, int K);
  double tau() const { return T / static_cast<double>(K); }
};

// Control-time set: finitely many disjoint open intervals inside (0, T),
// sorted and of positive total measure. Stands in for a positive-measure
// measurable set; interval unions are the representable class.
class TimeSet {
 public:
  TimeSet(double horizon, std::vector<std::array<double, 2>> intervals);

  double horizon() const { return horizon_; }
  const std::vector<std::array<double, 2>>& intervals() const { return intervals_; }

 private:
  double horizon_;
  std::vector<std::array<double, 2>> intervals_;
};

// Total measure of E.
double measure(const TimeSet& E);

// Measure of E ∩ (a, b), intervals clipped to (a, b).
double intersect_measure(const TimeSet& E, double a, double b);

// Step k of K is active iff its midpoint (k + 1/2) * T/K lies in E. Intervals
// shorter than a step can be missed; refine K to resolve them.
std::vector<std::uint8_t> active_step_mask(const TimeSet& E, int K);

// Anchor pair (l, l1) used by the telescoping construction: l is the left
// endpoint of the longest component of E (earliest wins ties) and l1 sits at
// 90% of that component.
std::pair<double, double> choose_density_anchor(const TimeSet& E);

// Geometrically shrinking partial sums l_m = l + kappa^-(m-1) * (l1 - l),
// m = 1..M, together with the per-pair density condition
//   l_m - l_{m+1} <= 3 * |E ∩ (l_{m+1}, l_m)|
// that drives the telescoping observability estimate.
struct TelescopeSequence {
  double l = 0.0;
  double l1 = 0.0;
  double kappa = 0.0;
  std::vector<double> terms;             // l_1..l_M
  std::vector<double> gaps;              // l_m - l_{m+1}, m = 1..M-1
  std::vector<double> intersections;     // |E ∩ (l_{m+1}, l_m)|
  std::vector<std::uint8_t> condition;   // per-pair pass flag
  bool all_pass = false;
};

TelescopeSequence build_telescope(const TimeSet& E, double l, double l1, double kappa, int M);

}  // namespace heatlab
