#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace mohl::physics {

/// Time-dependent ambient value. The named kinds cover every driver the
/// built-in cases use and serialize to the config format; `callable` wraps an
/// arbitrary function for tests and embedding.
class TimeFunction {
public:
  enum class Kind {
    Constant,
    Sinusoid,        // base + amplitude * sin(2 pi t / period)^power
    TanhStep,        // base + amplitude * tanh(t - t_step)
    RainPulse,       // amplitude * sin(pi t / period)^exponent on [t_on, t_off]
    HumidityScaled,  // rh(t) * Ps(u(t) * T_ref) / Pv_ref
    RainHeat,        // factor * rain(t) * (u(t) - u_ref)
    Table,           // piecewise-linear interpolation of (t, y) samples
    Callable
  };

  TimeFunction() = default;  // constant zero

  static TimeFunction constant(double value);
  static TimeFunction sinusoid(double base, double amplitude, double period, int power = 1);
  static TimeFunction tanh_step(double base, double amplitude, double t_step);
  static TimeFunction rain_pulse(double amplitude, double period, double exponent, double t_on,
                                 double t_off);
  static TimeFunction humidity_scaled(TimeFunction rh, TimeFunction u_inf, double T_ref,
                                      double Pv_ref);
  static TimeFunction rain_heat(double factor, TimeFunction rain, TimeFunction u_inf,
                                double u_ref);
  static TimeFunction table(std::vector<double> t, std::vector<double> y);
  static TimeFunction callable(std::function<double(double)> fn);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& table_t() const { return table_t_; }
  const std::vector<double>& table_y() const { return table_y_; }
  const TimeFunction* child_a() const { return child_a_.get(); }
  const TimeFunction* child_b() const { return child_b_.get(); }

private:
  Kind kind_ = Kind::Constant;
  std::vector<double> params_{0.0};
  std::vector<double> table_t_, table_y_;
  std::shared_ptr<const TimeFunction> child_a_, child_b_;
  std::function<double(double)> fn_;
};

enum class BoundarySide { Left, Right };
enum class BcMode { Robin, Dirichlet };

/// Ambient drivers and sources for one wall side. The normal is +1 on the
/// left and -1 on the right, matching the signs of the boundary residuals.
struct BoundaryDriver {
  BoundarySide side = BoundarySide::Left;
  double normal = 1.0;
  BcMode mode = BcMode::Robin;
  TimeFunction u_inf = TimeFunction::constant(1.0);
  TimeFunction v_inf = TimeFunction::constant(1.0);
  TimeFunction g_inf = TimeFunction::constant(0.0);
  TimeFunction q_inf = TimeFunction::constant(0.0);
};

inline BoundaryDriver make_left_driver() {
  BoundaryDriver d;
  d.side = BoundarySide::Left;
  d.normal = 1.0;
  return d;
}

inline BoundaryDriver make_right_driver() {
  BoundaryDriver d;
  d.side = BoundarySide::Right;
  d.normal = -1.0;
  return d;
}

}  // namespace mohl::physics
