#include "mohl/physics/closure.hpp"

#include <cmath>

#include "mohl/errors.hpp"

namespace mohl::physics {

namespace {

double horner(const std::vector<double>& coeffs, double v) {
  double acc = 0.0;
  for (double c : coeffs) acc = acc * v + c;
  return acc;
}

double horner_derivative(const std::vector<double>& coeffs, double v) {
  const int n = static_cast<int>(coeffs.size());
  double acc = 0.0;
  for (int i = 0; i < n - 1; ++i) acc = acc * v + coeffs[i] * static_cast<double>(n - 1 - i);
  return acc;
}

}  // namespace

ClosureFunction ClosureFunction::constant(double c) {
  ClosureFunction f;
  f.kind_ = Kind::Constant;
  f.num_ = {c};
  return f;
}

ClosureFunction ClosureFunction::linear(double a, double b) {
  ClosureFunction f;
  f.kind_ = Kind::Linear;
  f.num_ = {a, b};
  return f;
}

ClosureFunction ClosureFunction::power_plus(double a, double p, double c) {
  ClosureFunction f;
  f.kind_ = Kind::PowerPlus;
  f.num_ = {a, p, c};
  return f;
}

ClosureFunction ClosureFunction::rational(std::vector<double> num, std::vector<double> den) {
  if (num.empty() || den.empty()) throw ConfigError("rational closure needs coefficients");
  ClosureFunction f;
  f.kind_ = Kind::Rational;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  return f;
}

double ClosureFunction::value(double v) const {
  switch (kind_) {
    case Kind::Constant:
      return num_[0];
    case Kind::Linear:
      return num_[0] * v + num_[1];
    case Kind::PowerPlus:
      return num_[0] * std::pow(v, num_[1]) + num_[2];
    case Kind::Rational:
      return horner(num_, v) / horner(den_, v);
  }
  return 0.0;
}

double ClosureFunction::derivative(double v) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Linear:
      return num_[0];
    case Kind::PowerPlus:
      return num_[0] * num_[1] * std::pow(v, num_[1] - 1.0);
    case Kind::Rational: {
      const double p = horner(num_, v);
      const double q = horner(den_, v);
      const double dp = horner_derivative(num_, v);
      const double dq = horner_derivative(den_, v);
      return (dp * q - p * dq) / (q * q);
    }
  }
  return 0.0;
}

CoefficientClosure unit_closure() {
  CoefficientClosure c;
  c.cM = c.cT = c.cTM = c.kM = c.kT = c.kTM = ClosureFunction::constant(1.0);
  return c;
}

}  // namespace mohl::physics
