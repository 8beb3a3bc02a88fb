#include "mohl/cases/sensor_csv.hpp"

#include <algorithm>

#include "mohl/cases/presets.hpp"
#include "mohl/errors.hpp"
#include "mohl/physics/saturation.hpp"
#include "mohl/post/csv.hpp"

namespace mohl::cases {

using physics::TimeFunction;

SensorData load_sensor_csv(const std::string& path, const physics::ReferenceValues& refs) {
  const post::CsvTable table = post::read_csv(path);
  const std::vector<std::string> required = {"t_hours", "T_x0", "RH_x0", "T_x16", "RH_x16",
                                             "T_x4",    "RH_x4", "T_x8", "RH_x8", "T_x12",
                                             "RH_x12"};
  std::vector<int> col(required.size(), -1);
  for (std::size_t k = 0; k < required.size(); ++k) {
    auto it = std::find(table.header.begin(), table.header.end(), required[k]);
    if (it == table.header.end()) {
      throw SchemaViolation("sensor csv misses column '" + required[k] + "'");
    }
    col[k] = static_cast<int>(it - table.header.begin());
  }
  if (table.rows.size() < 2) throw SchemaViolation("sensor csv needs at least two rows");

  const std::size_t n = table.rows.size();
  std::vector<double> t(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (table.rows[r].size() != table.header.size()) {
      throw SchemaViolation("sensor csv row with wrong cell count");
    }
    t[r] = table.rows[r][static_cast<std::size_t>(col[0])];
    if (r > 0 && !(t[r] > t[r - 1])) {
      throw NonMonotoneTime("sensor csv timestamps must strictly increase");
    }
  }

  auto column = [&](int k) {
    std::vector<double> out(n);
    for (std::size_t r = 0; r < n; ++r) out[r] = table.rows[r][static_cast<std::size_t>(col[k])];
    return out;
  };
  auto u_series = [&](const std::vector<double>& T) {
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) y[r] = T[r] / refs.T0;
    return TimeFunction::table(t, y);
  };
  auto v_series = [&](const std::vector<double>& T, const std::vector<double>& RH) {
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) {
      y[r] = RH[r] * physics::saturation_pressure(T[r]) / refs.Pv0;
    }
    return TimeFunction::table(t, y);
  };

  SensorData data;
  const auto T0c = column(1), RH0 = column(2), T16 = column(3), RH16 = column(4);
  data.left_u = u_series(T0c);
  data.left_v = v_series(T0c, RH0);
  data.right_u = u_series(T16);
  data.right_v = v_series(T16, RH16);

  const struct {
    int Tc, RHc;
    double x_star;
    double sigma_pos;
  } positions[3] = {{5, 6, 4.0 / 16.0, 0.01}, {7, 8, 8.0 / 16.0, 0.005}, {9, 10, 12.0 / 16.0, 0.01}};
  for (const auto& p : positions) {
    SensorSeries s;
    s.x_star = p.x_star;
    s.sigma_pos = p.sigma_pos;
    s.t = t;
    s.T = column(p.Tc);
    const auto RH = column(p.RHc);
    s.Pv.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      s.Pv[r] = RH[r] * physics::saturation_pressure(s.T[r]);
    }
    data.sensors.push_back(std::move(s));
  }
  return data;
}

}  // namespace mohl::cases
