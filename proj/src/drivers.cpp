#include "mohl/physics/drivers.hpp"

#include <cmath>
#include <numbers>

#include "mohl/errors.hpp"
#include "mohl/physics/saturation.hpp"

namespace mohl::physics {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TimeFunction TimeFunction::constant(double value) {
  TimeFunction f;
  f.kind_ = Kind::Constant;
  f.params_ = {value};
  return f;
}

TimeFunction TimeFunction::sinusoid(double base, double amplitude, double period, int power) {
  if (!(period > 0.0)) throw ConfigError("sinusoid driver needs a positive period");
  TimeFunction f;
  f.kind_ = Kind::Sinusoid;
  f.params_ = {base, amplitude, period, static_cast<double>(power)};
  return f;
}

TimeFunction TimeFunction::tanh_step(double base, double amplitude, double t_step) {
  TimeFunction f;
  f.kind_ = Kind::TanhStep;
  f.params_ = {base, amplitude, t_step};
  return f;
}

TimeFunction TimeFunction::rain_pulse(double amplitude, double period, double exponent,
                                      double t_on, double t_off) {
  if (!(period > 0.0)) throw ConfigError("rain pulse needs a positive period");
  TimeFunction f;
  f.kind_ = Kind::RainPulse;
  f.params_ = {amplitude, period, exponent, t_on, t_off};
  return f;
}

TimeFunction TimeFunction::humidity_scaled(TimeFunction rh, TimeFunction u_inf, double T_ref,
                                           double Pv_ref) {
  TimeFunction f;
  f.kind_ = Kind::HumidityScaled;
  f.params_ = {T_ref, Pv_ref};
  f.child_a_ = std::make_shared<TimeFunction>(std::move(rh));
  f.child_b_ = std::make_shared<TimeFunction>(std::move(u_inf));
  return f;
}

TimeFunction TimeFunction::rain_heat(double factor, TimeFunction rain, TimeFunction u_inf,
                                     double u_ref) {
  TimeFunction f;
  f.kind_ = Kind::RainHeat;
  f.params_ = {factor, u_ref};
  f.child_a_ = std::make_shared<TimeFunction>(std::move(rain));
  f.child_b_ = std::make_shared<TimeFunction>(std::move(u_inf));
  return f;
}

TimeFunction TimeFunction::table(std::vector<double> t, std::vector<double> y) {
  if (t.size() != y.size() || t.size() < 2) throw ConfigError("table driver needs >= 2 samples");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw NonMonotoneTime("table driver times must strictly increase");
  }
  TimeFunction f;
  f.kind_ = Kind::Table;
  f.table_t_ = std::move(t);
  f.table_y_ = std::move(y);
  return f;
}

TimeFunction TimeFunction::callable(std::function<double(double)> fn) {
  TimeFunction f;
  f.kind_ = Kind::Callable;
  f.fn_ = std::move(fn);
  return f;
}

double TimeFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return params_[0];
    case Kind::Sinusoid: {
      const double s = std::sin(kTwoPi * t / params_[2]);
      return params_[0] + params_[1] * std::pow(s, params_[3]);
    }
    case Kind::TanhStep:
      return params_[0] + params_[1] * std::tanh(t - params_[2]);
    case Kind::RainPulse: {
      if (t < params_[3] || t > params_[4]) return 0.0;
      const double s = std::sin(std::numbers::pi * t / params_[1]);
      return params_[0] * std::pow(s, params_[2]);
    }
    case Kind::HumidityScaled: {
      const double rh = (*child_a_)(t);
      const double u = (*child_b_)(t);
      return rh * saturation_pressure(u * params_[0]) / params_[1];
    }
    case Kind::RainHeat:
      return params_[0] * (*child_a_)(t) * ((*child_b_)(t)-params_[1]);
    case Kind::Table: {
      if (t <= table_t_.front()) {
        // constant-slope extrapolation on both ends
        const double s = (table_y_[1] - table_y_[0]) / (table_t_[1] - table_t_[0]);
        return table_y_[0] + s * (t - table_t_[0]);
      }
      const std::size_t n = table_t_.size();
      if (t >= table_t_[n - 1]) {
        const double s = (table_y_[n - 1] - table_y_[n - 2]) / (table_t_[n - 1] - table_t_[n - 2]);
        return table_y_[n - 1] + s * (t - table_t_[n - 1]);
      }
      std::size_t lo = 0, hi = n - 1;
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (table_t_[mid] <= t ? lo : hi) = mid;
      }
      const double w = (t - table_t_[lo]) / (table_t_[lo + 1] - table_t_[lo]);
      return table_y_[lo] + w * (table_y_[lo + 1] - table_y_[lo]);
    }
    case Kind::Callable:
      return fn_(t);
  }
  return 0.0;
}

}  // namespace mohl::physics
