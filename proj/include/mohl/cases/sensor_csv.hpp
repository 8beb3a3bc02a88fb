#pragma once

#include <string>
#include <vector>

#include "mohl/physics/drivers.hpp"
#include "mohl/physics/model.hpp"

namespace mohl::cases {

struct SensorSeries;  // presets.hpp

/// Dirichlet drivers and interior reference series parsed from a sensor CSV
/// with columns
///   t_hours, T_x0, RH_x0, T_x16, RH_x16, T_x4, RH_x4, T_x8, RH_x8, T_x12, RH_x12
/// (temperatures in kelvin, relative humidity as a fraction). Timestamps must
/// strictly increase. Drivers interpolate the converted samples linearly.
struct SensorData {
  physics::TimeFunction left_u, left_v, right_u, right_v;
  std::vector<SensorSeries> sensors;  // x = 4, 8, 12 cm
};

SensorData load_sensor_csv(const std::string& path, const physics::ReferenceValues& refs);

}  // namespace mohl::cases
