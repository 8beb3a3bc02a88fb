#pragma once

namespace mohl::physics {

/// Water vapour saturation pressure [Pa] over the building-physics range
/// T in [253, 333] K. Magnus-type correlation
///   P_s = 610.94 * exp(17.625 * t / (243.04 + t)),  t in Celsius,
/// which gives 2333.6 Pa at 293.15 K. Throws OutOfRange outside the range.
double saturation_pressure(double T_kelvin);

}  // namespace mohl::physics
