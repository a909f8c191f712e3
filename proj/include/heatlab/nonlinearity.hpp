#pragma once

#include <string>

namespace heatlab {

// Globally Lipschitz nonlinearity with f(0) = 0, from a fixed catalog so runs
// are reproducible from a config name. The declared Lipschitz constant L is
// exact for every catalog entry.
class Nonlinearity {
 public:
  enum class Kind { Zero, Linear, Sin, Tanh };

  static Nonlinearity zero();
  static Nonlinearity linear(double c);     // f(s) = c * s
  static Nonlinearity sine(double L);       // f(s) = L * sin(s)
  static Nonlinearity tanh(double L);       // f(s) = L * tanh(s)
  static Nonlinearity by_name(const std::string& name, double param);

  double operator()(double s) const;
  double derivative_at_zero() const;
  // Difference quotient f(s)/s, continued through 0 by f'(0); |s| <= threshold
  // counts as 0 to keep the division well conditioned.
  double quotient(double s, double threshold) const;

  double lipschitz() const { return lipschitz_; }
  bool identically_zero() const { return kind_ == Kind::Zero; }
  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }

 private:
  Nonlinearity(Kind kind, double param, double lipschitz, std::string name);

  Kind kind_;
  double param_;
  double lipschitz_;
  std::string name_;
};

}  // namespace heatlab
