#include "heatlab/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

namespace heatlab {

Nonlinearity::Nonlinearity(Kind kind, double param, double lipschitz, std::string name)
    : kind_(kind), param_(param), lipschitz_(lipschitz), name_(std::move(name)) {}

Nonlinearity Nonlinearity::zero() { return Nonlinearity(Kind::Zero, 0.0, 0.0, "zero"); }

Nonlinearity Nonlinearity::linear(double c) {
  return Nonlinearity(Kind::Linear, c, std::abs(c), "linear");
}

Nonlinearity Nonlinearity::sine(double L) {
  if (!(L > 0.0)) throw std::invalid_argument("nonlinearity: sin needs L > 0");
  return Nonlinearity(Kind::Sin, L, L, "sin");
}

Nonlinearity Nonlinearity::tanh(double L) {
  if (!(L > 0.0)) throw std::invalid_argument("nonlinearity: tanh needs L > 0");
  return Nonlinearity(Kind::Tanh, L, L, "tanh");
}

Nonlinearity Nonlinearity::by_name(const std::string& name, double param) {
  if (name == "zero") return zero();
  if (name == "linear") return linear(param);
  if (name == "sin") return sine(param);
  if (name == "tanh") return tanh(param);
  throw std::invalid_argument("nonlinearity: unknown name '" + name + "'");
}

double Nonlinearity::operator()(double s) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Linear:
      return param_ * s;
    case Kind::Sin:
      return param_ * std::sin(s);
    case Kind::Tanh:
      return param_ * std::tanh(s);
  }
  return 0.0;
}

double Nonlinearity::derivative_at_zero() const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Linear:
    case Kind::Sin:
    case Kind::Tanh:
      return param_;
  }
  return 0.0;
}

double Nonlinearity::quotient(double s, double threshold) const {
  if (std::abs(s) <= threshold) return derivative_at_zero();
  return (*this)(s) / s;
}

}  // namespace heatlab
