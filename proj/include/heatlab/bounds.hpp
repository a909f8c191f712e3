#pragma once

#include "heatlab/time_set.hpp"

namespace heatlab {

// Exponents steering the telescoping sum: alpha = theta / (1 - theta) and
// kappa = sqrt((alpha + 2) / (alpha + 1)), so kappa decreases from sqrt(2)
// toward 1 as theta approaches 1.
struct KappaAlpha {
  double alpha = 0.0;
  double kappa = 0.0;
};

KappaAlpha kappa_alpha(double theta);

// One-shot terminal bound exp(c3 * (1/T + T + T*a + a^(2/3))) for potential
// sup norm a on horizon T.
double interpolation_bound(double horizon, double a_norm, double c3);

struct BoundConstants {
  double c = 1.0;        // scale in front of the exponent, kept for reporting
  double c3 = 1.0;       // interpolation constant
  double theta = 0.5;    // interpolation exponent, in (0, 1)
  double c_tilde = 0.0;  // log of the leading absolute constant

  void validate() const;
};

// Assembled observability constant together with every intermediate quantity.
// log_value is always finite; value may overflow to infinity for extreme
// potentials or tiny anchors, in which case log_value is the usable answer.
struct ObservabilityBound {
  double l = 0.0;
  double l1 = 0.0;
  double alpha = 0.0;
  double kappa = 0.0;
  double d = 0.0;
  double k1 = 0.0;  // exp(k2 * (T + T*a + a^(2/3)))
  double k2 = 0.0;  // c3 / (1 - theta)
  double k3 = 0.0;  // exp(2*T*a)^(1+alpha) * k1
  double series = 0.0;  // telescoped tail sum, in (0, 1)
  double log_value = 0.0;
  double value = 0.0;
};

ObservabilityBound assemble_observability_constant(const TimeSet& E, double horizon,
                                                   double a_norm,
                                                   const BoundConstants& consts);

}  // namespace heatlab
