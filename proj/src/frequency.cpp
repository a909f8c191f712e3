#include "heatlab/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatlab {

void FrequencyParams::validate() const {
  if (!(r > 0.0)) throw std::invalid_argument("frequency.r must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("frequency.lambda must be positive");
}

double frequency_tolerance(double h, double tau, double lambda) {
  return kFrequencyTolCalibration * (h + tau) / lambda;
}

namespace {

struct Quotient {
  double num = 0.0;  // gradient or source energy against G
  double den = 0.0;  // field energy against G
};

double sq(double x) { return x * x; }

// Shared quadrature: iterate interior nodes of the ball, weight by G at time
// level k, accumulate num via the supplied integrand.
template <typename F>
Quotient ball_quotient(const SpaceTimeField& u, const SpatialGrid& grid,
                       const FrequencyParams& p, int k, F&& num_term) {
  const double T = u.tau * static_cast<double>(u.steps());
  const double s = T - static_cast<double>(k) * u.tau + p.lambda;
  const GridVector& lv = u.levels[static_cast<std::size_t>(k)];
  const int nx = grid.axis_nodes(0);
  const int ny = grid.dim() == 2 ? grid.axis_nodes(1) : 1;
  const double gauss_scale = std::pow(s, -0.5 * static_cast<double>(grid.dim()));
  Quotient q;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int j = grid.index(ix, iy);
      const Point pos = grid.position(j);
      double d2 = sq(pos[0] - p.x0[0]);
      if (grid.dim() == 2) d2 += sq(pos[1] - p.x0[1]);
      if (d2 > p.r * p.r) continue;
      const double G = gauss_scale * std::exp(-d2 / (4.0 * s));
      q.den += lv[j] * lv[j] * G;
      q.num += num_term(lv, ix, iy, j) * G;
    }
  }
  q.num *= grid.cell_weight();
  q.den *= grid.cell_weight();
  return q;
}

std::optional<double> quotient_value(const Quotient& q) {
  if (q.den <= 0.0) return std::nullopt;
  return q.num / q.den;
}

std::optional<double> gradient_quotient(const SpaceTimeField& u, const SpatialGrid& grid,
                                        const FrequencyParams& p, int k) {
  const int nx = grid.axis_nodes(0);
  const int ny = grid.dim() == 2 ? grid.axis_nodes(1) : 1;
  const double inv2h = 1.0 / (2.0 * grid.h());
  auto grad2 = [&](const GridVector& lv, int ix, int iy, int j) {
    // Centered differences; nodes beyond the domain boundary carry the
    // Dirichlet zero.
    const double xm = ix > 0 ? lv[j - 1] : 0.0;
    const double xp = ix + 1 < nx ? lv[j + 1] : 0.0;
    double g = sq((xp - xm) * inv2h);
    if (grid.dim() == 2) {
      const double ym = iy > 0 ? lv[j - nx] : 0.0;
      const double yp = iy + 1 < ny ? lv[j + nx] : 0.0;
      g += sq((yp - ym) * inv2h);
    }
    return g;
  };
  return quotient_value(ball_quotient(u, grid, p, k, grad2));
}

}  // namespace

std::optional<double> frequency_function(const SpaceTimeField& u, const SpatialGrid& grid,
                                         const FrequencyParams& p, int k) {
  p.validate();
  if (u.empty()) throw std::invalid_argument("frequency_function: empty field");
  if (k < 0 || k > u.steps()) throw std::invalid_argument("frequency_function: level out of range");
  if (u.levels[0].size() != grid.node_count())
    throw std::invalid_argument("frequency_function: field/grid size mismatch");
  return gradient_quotient(u, grid, p, k);
}

FrequencyReport frequency_monotonicity_check(const SpaceTimeField& u, const SpatialGrid& grid,
                                             const FrequencyParams& p,
                                             const PotentialField* a) {
  p.validate();
  if (u.empty() || u.steps() < 1)
    throw std::invalid_argument("monotonicity check needs at least one step");
  const int K = u.steps();
  const double T = u.tau * static_cast<double>(K);

  FrequencyReport rep;
  rep.tolerance = frequency_tolerance(grid.h(), u.tau, p.lambda);
  rep.values.resize(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) rep.values[static_cast<std::size_t>(k)] = frequency_function(u, grid, p, k);

  rep.pairs.resize(static_cast<std::size_t>(K));
  bool any_defined = false;
  for (int k = 0; k < K; ++k) {
    FrequencyPair& pair = rep.pairs[static_cast<std::size_t>(k)];
    pair.t = static_cast<double>(k) * u.tau;
    const auto& Nk = rep.values[static_cast<std::size_t>(k)];
    const auto& Nk1 = rep.values[static_cast<std::size_t>(k) + 1];
    if (!Nk || !Nk1) continue;
    pair.defined = true;
    any_defined = true;
    pair.derivative = (*Nk1 - *Nk) / u.tau;
    double source = 0.0;
    if (a) {
      const GridVector& ak = a->at_step(a->is_time_constant() ? 0 : std::min(k, a->step_count() - 1));
      auto src2 = [&](const GridVector& lv, int, int, int j) { return sq(ak[j] * lv[j]); };
      const auto sq_quot = quotient_value(ball_quotient(u, grid, p, k, src2));
      source = sq_quot.value_or(0.0);
    }
    pair.bound = *Nk / (T - pair.t + p.lambda) + source;
    pair.violation = std::max(0.0, pair.derivative - pair.bound);
    rep.max_violation = std::max(rep.max_violation, pair.violation);
  }
  rep.pass = any_defined && rep.max_violation <= rep.tolerance;
  return rep;
}

InterpolationReport interpolation_report(const SpaceTimeField& phi, const SpatialGrid& grid,
                                         const Point& x0, double r, double R, double delta) {
  if (phi.empty() || phi.steps() < 1)
    throw std::invalid_argument("interpolation report needs a trajectory");
  if (!(r > 0.0) || !(R > 0.0)) throw std::invalid_argument("interpolation radii must be positive");
  if (delta < 0.0) throw std::invalid_argument("interpolation delta must be >= 0");

  InterpolationReport rep;
  rep.R0 = (1.0 + 2.0 * delta) * R;
  rep.degenerate = r >= R;
  const int K = phi.steps();
  const double T = phi.tau * static_cast<double>(K);
  const GridVector& phiT = phi.levels.back();
  const double w = grid.cell_weight();

  for (int j = 0; j < grid.node_count(); ++j) {
    const Point pos = grid.position(j);
    double d2 = 0.0;
    double dmax = 0.0;
    for (int ax = 0; ax < grid.dim(); ++ax) {
      const double d = pos[ax] - x0[ax];
      d2 += d * d;
      dmax = std::max(dmax, std::abs(d));
    }
    const double v2 = phiT[j] * phiT[j] * w;
    if (d2 <= R * R) rep.lhs += v2;
    if (d2 <= r * r) rep.small += v2;
    if (dmax <= 2.0 * rep.R0) {
      // Space-time mass over (T/2, T): steps whose midpoint lies there.
      double acc = 0.0;
      for (int k = 0; k < K; ++k) {
        const double mid = (static_cast<double>(k) + 0.5) * phi.tau;
        if (mid > 0.5 * T) {
          const double v = phi.levels[static_cast<std::size_t>(k)][j];
          acc += v * v;
        }
      }
      rep.mid += acc * w * phi.tau;
    }
  }

  if (rep.lhs > 0.0 && rep.small > 0.0 && rep.mid > 0.0 && rep.mid != 2.0 * rep.small) {
    rep.gamma_hat = std::log(rep.lhs / (2.0 * rep.small)) / std::log(rep.mid / (2.0 * rep.small));
    rep.gamma_defined = true;
  }
  return rep;
}

GlobalInterpolationReport global_interpolation_report(const SpaceTimeField& phi,
                                                      const SpatialGrid& grid,
                                                      const NodeMask& mask) {
  if (phi.empty() || phi.steps() < 1)
    throw std::invalid_argument("interpolation report needs a trajectory");
  if (static_cast<int>(mask.w.size()) != grid.node_count())
    throw std::invalid_argument("mask/grid size mismatch");
  GlobalInterpolationReport rep;
  const double w = grid.cell_weight();
  const GridVector& p0 = phi.levels.front();
  const GridVector& pT = phi.levels.back();
  rep.total_0 = w * p0.squaredNorm();
  rep.total_T = w * pT.squaredNorm();
  for (int j = 0; j < grid.node_count(); ++j) {
    if (mask.w[static_cast<std::size_t>(j)]) rep.observed_T += w * pT[j] * pT[j];
  }
  if (rep.total_T > 0.0 && rep.total_0 > 0.0 && rep.observed_T > 0.0 &&
      rep.total_0 != rep.observed_T) {
    rep.theta_hat = std::log(rep.total_T / rep.observed_T) / std::log(rep.total_0 / rep.observed_T);
    rep.theta_defined = true;
  }
  return rep;
}

}  // namespace heatlab
