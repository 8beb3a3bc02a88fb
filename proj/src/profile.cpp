#include "mohl/physics/profile.hpp"

#include "mohl/errors.hpp"

namespace mohl::physics {

SpatialProfile SpatialProfile::uniform(double value) {
  SpatialProfile p;
  p.kind_ = Kind::Uniform;
  p.coeffs_ = {value};
  return p;
}

SpatialProfile SpatialProfile::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw ConfigError("polynomial profile needs coefficients");
  SpatialProfile p;
  p.kind_ = Kind::Polynomial;
  p.coeffs_ = std::move(coeffs);
  return p;
}

SpatialProfile SpatialProfile::callable(std::function<double(double)> value,
                                        std::function<double(double)> derivative) {
  SpatialProfile p;
  p.kind_ = Kind::Callable;
  p.value_fn_ = std::move(value);
  p.derivative_fn_ = std::move(derivative);
  return p;
}

double SpatialProfile::value(double x) const {
  switch (kind_) {
    case Kind::Uniform:
      return coeffs_[0];
    case Kind::Polynomial: {
      double acc = 0.0;
      for (double c : coeffs_) acc = acc * x + c;
      return acc;
    }
    case Kind::Callable:
      return value_fn_(x);
  }
  return 0.0;
}

double SpatialProfile::derivative(double x) const {
  switch (kind_) {
    case Kind::Uniform:
      return 0.0;
    case Kind::Polynomial: {
      const int n = static_cast<int>(coeffs_.size());
      double acc = 0.0;
      for (int i = 0; i < n - 1; ++i) acc = acc * x + coeffs_[i] * static_cast<double>(n - 1 - i);
      return acc;
    }
    case Kind::Callable:
      return derivative_fn_(x);
  }
  return 0.0;
}

}  // namespace mohl::physics
