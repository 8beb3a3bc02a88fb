#include "mohl/physics/saturation.hpp"

#include <cmath>

#include "mohl/errors.hpp"

namespace mohl::physics {

double saturation_pressure(double T_kelvin) {
  if (T_kelvin < 253.0 || T_kelvin > 333.0) {
    throw OutOfRange("saturation_pressure: temperature outside [253, 333] K");
  }
  const double t = T_kelvin - 273.15;
  return 610.94 * std::exp(17.625 * t / (243.04 + t));
}

}  // namespace mohl::physics
