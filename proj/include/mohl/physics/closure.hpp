#pragma once

#include <vector>

namespace mohl::physics {

/// One dimensionless material property as a closed-form function of the
/// dimensionless vapour pressure v, stored so the derivative is exact
/// (quotient rule on the coefficient vectors, no finite differences).
class ClosureFunction {
public:
  enum class Kind { Constant, Linear, PowerPlus, Rational };

  ClosureFunction() = default;  // constant 1

  static ClosureFunction constant(double c);
  /// a*v + b
  static ClosureFunction linear(double a, double b);
  /// a*v^p + c
  static ClosureFunction power_plus(double a, double p, double c);
  /// num(v)/den(v), coefficients in descending powers
  static ClosureFunction rational(std::vector<double> num, std::vector<double> den);

  double value(double v) const;
  double derivative(double v) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& numerator() const { return num_; }
  const std::vector<double>& denominator() const { return den_; }

private:
  Kind kind_ = Kind::Constant;
  // Constant: num_ = {c}; Linear: num_ = {a, b}; PowerPlus: num_ = {a, p, c};
  // Rational: num_/den_ are polynomial coefficients.
  std::vector<double> num_{1.0};
  std::vector<double> den_;
};

/// The six per-layer property closures c*_M..k*_TM. Derivatives of the three
/// transfer coefficients feed the coupled right-hand sides.
struct CoefficientClosure {
  ClosureFunction cM, cT, cTM, kM, kT, kTM;
};

/// Constant-property closure (all six identically one); handy in tests and
/// manufactured problems.
CoefficientClosure unit_closure();

}  // namespace mohl::physics
