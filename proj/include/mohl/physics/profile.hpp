#pragma once

#include <functional>
#include <vector>

namespace mohl::physics {

/// Initial-condition profile over x* in [0, 1], evaluable for value and
/// slope. Uniform and polynomial kinds serialize to the config format.
class SpatialProfile {
public:
  enum class Kind { Uniform, Polynomial, Callable };

  SpatialProfile() = default;  // uniform zero

  static SpatialProfile uniform(double value);
  /// coefficients in descending powers of x*
  static SpatialProfile polynomial(std::vector<double> coeffs);
  static SpatialProfile callable(std::function<double(double)> value,
                                 std::function<double(double)> derivative);

  double value(double x) const;
  double derivative(double x) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

private:
  Kind kind_ = Kind::Uniform;
  std::vector<double> coeffs_{0.0};
  std::function<double(double)> value_fn_, derivative_fn_;
};

}  // namespace mohl::physics
