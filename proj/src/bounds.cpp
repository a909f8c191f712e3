#include "heatlab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace heatlab {

KappaAlpha kappa_alpha(double theta) {
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw std::invalid_argument("bound.theta must lie in (0, 1)");
  }
  KappaAlpha out;
  out.alpha = theta / (1.0 - theta);
  out.kappa = std::sqrt((out.alpha + 2.0) / (out.alpha + 1.0));
  return out;
}

double interpolation_bound(double horizon, double a_norm, double c3) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("time.T must be positive");
  }
  if (a_norm < 0.0) {
    throw std::invalid_argument("potential sup norm must be nonnegative");
  }
  if (!(c3 > 0.0)) {
    throw std::invalid_argument("bound.c3 must be positive");
  }
  const double exponent = c3 * (1.0 / horizon + horizon + horizon * a_norm +
                                std::pow(a_norm, 2.0 / 3.0));
  return std::exp(exponent);
}

void BoundConstants::validate() const {
  if (!(c > 0.0)) {
    throw std::invalid_argument("bound.c must be positive");
  }
  if (!(c3 > 0.0)) {
    throw std::invalid_argument("bound.c3 must be positive");
  }
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw std::invalid_argument("bound.theta must lie in (0, 1)");
  }
}

ObservabilityBound assemble_observability_constant(const TimeSet& E, double horizon,
                                                   double a_norm,
                                                   const BoundConstants& consts) {
  consts.validate();
  if (horizon != E.horizon()) {
    throw std::invalid_argument("time.T must match the horizon of time.E");
  }
  if (a_norm < 0.0) {
    throw std::invalid_argument("potential sup norm must be nonnegative");
  }

  ObservabilityBound out;
  const auto anchor = choose_density_anchor(E);
  out.l = anchor.first;
  out.l1 = anchor.second;
  const KappaAlpha ka = kappa_alpha(consts.theta);
  out.alpha = ka.alpha;
  out.kappa = ka.kappa;

  const double growth = horizon + horizon * a_norm + std::pow(a_norm, 2.0 / 3.0);
  out.k2 = consts.c3 / (1.0 - consts.theta);
  const double log_k1 = out.k2 * growth;
  const double log_k3 = 2.0 * horizon * a_norm * (1.0 + out.alpha) + log_k1;
  out.k1 = std::exp(log_k1);
  out.k3 = std::exp(log_k3);
  out.d = 2.0 * out.k2 / (out.kappa * (out.l1 - out.l) * (out.kappa - 1.0));

  // The tail sum telescopes, so every partial sum stays in (0, 1] once the
  // leading factor exp((2+alpha)*d*kappa^2) is pulled out. Summing in that
  // scaled form keeps each term representable even when d is large.
  const double weight = (2.0 + out.alpha) * out.d;
  const double kappa_sq = out.kappa * out.kappa;
  const double lead = weight * kappa_sq;
  double power = kappa_sq;  // kappa^(2m') for the current term
  double scaled_sum = 0.0;
  for (int term_index = 0; term_index < 20000; ++term_index) {
    const double current = weight * power;
    const double next = current * kappa_sq;
    const double term = -std::exp(lead - current) * std::expm1(current - next);
    scaled_sum += term;
    power *= kappa_sq;
    if (!(term > 1e-300 * scaled_sum) || !std::isfinite(power)) {
      break;
    }
  }
  if (!(scaled_sum > 0.0)) {
    throw std::invalid_argument(
        "telescoping series vanished; anchor interval is too short for these constants");
  }
  out.series = scaled_sum * std::exp(-lead);

  const double log_series = std::log(scaled_sum) - lead;
  out.log_value = std::log(consts.c) + consts.c_tilde + 2.0 * horizon * a_norm +
                  std::log(3.0) - std::log(out.kappa) + log_k3 - std::log(out.k2) -
                  log_series;
  out.value = std::exp(out.log_value);
  return out;
}

}  // namespace heatlab
