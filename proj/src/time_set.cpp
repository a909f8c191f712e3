#include "heatlab/time_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heatlab {

TimeGrid::TimeGrid(double T_, int K_) : T(T_), K(K_) {
  if (!(T > 0.0)) throw std::invalid_argument("time.T must be positive");
  if (K < 1) throw std::invalid_argument("time.K must be >= 1");
}

TimeSet::TimeSet(double horizon, std::vector<std::array<double, 2>> intervals)
    : horizon_(horizon), intervals_(std::move(intervals)) {
  if (!(horizon_ > 0.0)) throw std::invalid_argument("time.T must be positive");
  if (intervals_.empty()) throw std::invalid_argument("time.E must have positive measure");
  double prev_end = 0.0;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const double a = intervals_[i][0];
    const double b = intervals_[i][1];
    if (!(a < b)) throw std::invalid_argument("time.E interval " + std::to_string(i) + " is empty");
    if (a < 0.0 || b > horizon_)
      throw std::invalid_argument("time.E interval " + std::to_string(i) +
                                  " must lie inside (0, T)");
    if (i > 0 && a < prev_end)
      throw std::invalid_argument("time.E intervals must be sorted and disjoint");
    prev_end = b;
  }
}

double measure(const TimeSet& E) {
  double total = 0.0;
  for (const auto& iv : E.intervals()) total += iv[1] - iv[0];
  return total;
}

double intersect_measure(const TimeSet& E, double a, double b) {
  if (!(a < b)) return 0.0;
  double total = 0.0;
  for (const auto& iv : E.intervals()) {
    const double lo = std::max(iv[0], a);
    const double hi = std::min(iv[1], b);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

std::vector<std::uint8_t> active_step_mask(const TimeSet& E, int K) {
  if (K < 1) throw std::invalid_argument("time.K must be >= 1");
  const double tau = E.horizon() / static_cast<double>(K);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(K), 0);
  for (int k = 0; k < K; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * tau;
    for (const auto& iv : E.intervals()) {
      if (mid > iv[0] && mid < iv[1]) {
        mask[static_cast<std::size_t>(k)] = 1;
        break;
      }
    }
  }
  return mask;
}

std::pair<double, double> choose_density_anchor(const TimeSet& E) {
  if (E.intervals().empty()) throw std::invalid_argument("density anchor needs nonempty E");
  std::size_t best = 0;
  double best_len = 0.0;
  for (std::size_t i = 0; i < E.intervals().size(); ++i) {
    const double len = E.intervals()[i][1] - E.intervals()[i][0];
    if (len > best_len) {  // strict: earlier component wins ties
      best_len = len;
      best = i;
    }
  }
  const double a = E.intervals()[best][0];
  return {a, a + 0.9 * best_len};
}

TelescopeSequence build_telescope(const TimeSet& E, double l, double l1, double kappa, int M) {
  if (!(kappa > 1.0)) throw std::invalid_argument("telescope.kappa must be > 1");
  if (!(l < l1)) throw std::invalid_argument("telescope anchor needs l < l1");
  if (M < 1) throw std::invalid_argument("telescope.M must be >= 1");

  TelescopeSequence seq;
  seq.l = l;
  seq.l1 = l1;
  seq.kappa = kappa;
  seq.terms.resize(static_cast<std::size_t>(M));
  for (int m = 1; m <= M; ++m) {
    seq.terms[static_cast<std::size_t>(m - 1)] =
        l + std::pow(kappa, -static_cast<double>(m - 1)) * (l1 - l);
  }
  seq.all_pass = true;
  for (int m = 0; m + 1 < M; ++m) {
    const double hi = seq.terms[static_cast<std::size_t>(m)];
    const double lo = seq.terms[static_cast<std::size_t>(m + 1)];
    const double gap = hi - lo;
    const double inter = intersect_measure(E, lo, hi);
    const bool ok = gap <= 3.0 * inter;
    seq.gaps.push_back(gap);
    seq.intersections.push_back(inter);
    seq.condition.push_back(ok ? 1 : 0);
    if (!ok) seq.all_pass = false;
  }
  return seq;
}

}  // namespace heatlab
