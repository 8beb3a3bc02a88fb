#include "mohl/post/fluxes.hpp"

#include <cmath>

#include "mohl/errors.hpp"

namespace mohl::post {

using physics::DimensionlessModel;

FluxSeries boundary_fluxes(const stepper::SimulationSeries& series,
                           const DimensionlessModel& model, double x0) {
  const double L = model.refs.L;
  if (x0 < 0.0 || x0 > L) throw OutOfDomain("flux coordinate outside [0, L]");
  const double xs = x0 / L;
  int idx = 0;
  double best = 2.0;
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    const double d = std::abs(series.grid[i] - xs);
    if (d < best) {
      best = d;
      idx = static_cast<int>(i);
    }
  }
  const double x_star = series.grid[static_cast<std::size_t>(idx)];

  FluxSeries f;
  f.x0 = x_star * L;
  f.t.reserve(series.times.size());
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const auto& snap = series.snapshots[k];
    const double v = snap.v(idx);
    const double theta = snap.theta(idx);
    const double mu = snap.mu(idx);
    const auto c = physics::eval_coefficients(model, v, x_star);
    f.t.push_back(series.times[k]);
    f.q_s.push_back(-model.refs.kT0 * c.kT * (model.refs.T0 / L) * mu);
    f.q_l.push_back(-model.refs.kTM0 * c.kTM * (model.refs.Pv0 / L) * theta);
    f.g.push_back(-model.refs.kM0 * c.kM * (model.refs.Pv0 / L) * theta);
  }
  return f;
}

namespace {

// antiderivative of c*_M over [1, v], 16-point Gauss-Legendre
double storage_potential(const physics::ClosureFunction& cM, double v) {
  static const double xg[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                               0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
  static const double wg[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                               0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};
  const double a = 1.0, b = v;
  const double c1 = 0.5 * (b - a), c2 = 0.5 * (b + a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    acc += wg[i] * (cM.value(c2 + c1 * xg[i]) + cM.value(c2 - c1 * xg[i]));
  }
  return c1 * acc;
}

}  // namespace

MassBudget mass_budget(const stepper::SimulationSeries& series, const DimensionlessModel& model) {
  MassBudget b;
  const std::size_t nt = series.times.size();
  if (nt == 0) return b;
  const auto& grid = series.grid;
  const std::size_t nx = grid.size();

  auto stored_mass = [&](const stepper::FieldSnapshot& snap) {
    // trapezoid over the output grid, layer closure per node
    double acc = 0.0;
    double prev = storage_potential(model.layer_at(grid[0]).closure.cM, snap.v(0));
    for (std::size_t i = 1; i < nx; ++i) {
      const double cur = storage_potential(model.layer_at(grid[i]).closure.cM, snap.v(i));
      acc += 0.5 * (prev + cur) * (grid[i] - grid[i - 1]);
      prev = cur;
    }
    return acc;
  };
  auto wall_flux = [&](const stepper::FieldSnapshot& snap) {
    const auto cl = physics::eval_coefficients(model, snap.v(0), 0.0);
    const auto cr = physics::eval_coefficients(model, snap.v(nx - 1), 1.0);
    return model.Fo_M * (cr.kM * snap.theta(nx - 1) - cl.kM * snap.theta(0));
  };

  std::vector<double> M(nt), F(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    M[k] = stored_mass(series.snapshots[k]);
    F[k] = wall_flux(series.snapshots[k]);
  }

  b.t = series.times;
  b.stored.resize(nt);
  for (std::size_t k = 0; k < nt; ++k) b.stored[k] = M[k] - M[0];
  b.step_residual.resize(nt == 0 ? 0 : nt - 1);
  double flux_integral = 0.0;
  double max_swing = 0.0;
  double abs_flux_integral = 0.0;
  for (std::size_t k = 1; k < nt; ++k) {
    const double dt = series.times[k] - series.times[k - 1];
    const double inflow = 0.5 * (F[k] + F[k - 1]) * dt;
    b.step_residual[k - 1] = std::abs((M[k] - M[k - 1]) - inflow);
    flux_integral += inflow;
    abs_flux_integral += std::abs(inflow);
    max_swing = std::max(max_swing, std::abs(M[k] - M[0]));
  }
  const double defect = std::abs((M[nt - 1] - M[0]) - flux_integral);
  const double ref = std::max({max_swing, abs_flux_integral, 1e-300});
  b.aggregate_closure = defect / ref;
  return b;
}

}  // namespace mohl::post
