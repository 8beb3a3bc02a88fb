#include "mohl/stepper/stepper.hpp"

#include <chrono>

#include "mohl/errors.hpp"

namespace mohl::stepper {

using physics::BoundaryDriver;
using physics::DimensionlessModel;
using physics::ImplicitTimeDerivative;
using physics::SpatialProfile;

std::vector<double> bdf_time_derivative(const std::vector<std::vector<double>>& history,
                                        const std::vector<double>& current, double dt_star,
                                        int order) {
  if (order != 1 && order != 2) throw ConfigError("bdf order must be 1 or 2");
  if (static_cast<int>(history.size()) < order) {
    throw InsufficientHistory("bdf_time_derivative needs " + std::to_string(order) +
                              " history layers");
  }
  std::vector<double> out(current.size());
  if (order == 1) {
    const auto& prev = history[0];
    for (std::size_t i = 0; i < current.size(); ++i) out[i] = (current[i] - prev[i]) / dt_star;
  } else {
    const auto& prev = history[0];
    const auto& prev2 = history[1];
    for (std::size_t i = 0; i < current.size(); ++i) {
      out[i] = (3.0 * current[i] - 4.0 * prev[i] + prev2[i]) / (2.0 * dt_star);
    }
  }
  return out;
}

namespace {

std::vector<double> interface_coordinates(const DimensionlessModel& model) {
  std::vector<double> pins;
  for (std::size_t i = 0; i + 1 < model.layers.size(); ++i) {
    pins.push_back(model.layers[i].x_end);
  }
  return pins;
}

ImplicitTimeDerivative make_time_derivative(
    int order, double dt, std::shared_ptr<const bvp::CollocationSolution> prev,
    std::shared_ptr<const bvp::CollocationSolution> prev2) {
  ImplicitTimeDerivative td;
  if (order == 1) {
    td.leading = 1.0 / dt;
    td.history = [prev, dt](double x) { return -prev->value_at(x, 0) / dt; };
  } else {
    td.leading = 1.5 / dt;
    td.history = [prev, prev2, dt](double x) {
      return (-4.0 * prev->value_at(x, 0) + prev2->value_at(x, 0)) / (2.0 * dt);
    };
  }
  return td;
}

}  // namespace

SimulationState make_initial_state(const DimensionlessModel& model,
                                   const SpatialProfile& v_initial,
                                   const SpatialProfile& u_initial, int nodes) {
  std::vector<double> coords;
  coords.reserve(nodes);
  for (int i = 0; i < nodes; ++i) coords.push_back(static_cast<double>(i) / (nodes - 1));
  for (double pin : interface_coordinates(model)) {
    if (std::find(coords.begin(), coords.end(), pin) == coords.end()) coords.push_back(pin);
  }
  std::sort(coords.begin(), coords.end());
  bvp::Mesh mesh(coords);

  auto field_solution = [&](const SpatialProfile& p) {
    Eigen::MatrixXd values(2, mesh.node_count()), slopes(2, mesh.node_count());
    const double h_fd = 1e-6;
    for (int j = 0; j < mesh.node_count(); ++j) {
      const double x = mesh.nodes()[j];
      values(0, j) = p.value(x);
      values(1, j) = p.derivative(x);
      slopes(0, j) = p.derivative(x);
      const double xl = std::max(0.0, x - h_fd);
      const double xr = std::min(1.0, x + h_fd);
      slopes(1, j) = (p.derivative(xr) - p.derivative(xl)) / (xr - xl);
    }
    return bvp::CollocationSolution(mesh, values, slopes);
  };

  SimulationState state;
  state.t_star = 0.0;
  state.layer = 0;
  state.v_solution = field_solution(v_initial);
  state.u_solution = field_solution(u_initial);
  return state;
}

SimulationState advance_step(const SimulationState& state, const DimensionlessModel& model,
                             const BoundaryDriver& left, const BoundaryDriver& right,
                             const bvp::SolverOptions& options, double dt_star) {
  const double t_new = state.t_star + dt_star;
  const int order = state.v_previous ? 2 : 1;
  const std::vector<double> pins = interface_coordinates(model);

  auto v_now = std::make_shared<const bvp::CollocationSolution>(state.v_solution);
  auto u_now = std::make_shared<const bvp::CollocationSolution>(state.u_solution);

  SimulationState next;
  next.t_star = t_new;
  next.layer = state.layer + 1;

  try {
    ImplicitTimeDerivative v_td = make_time_derivative(order, dt_star, v_now, state.v_previous);
    bvp::OdeSystem moisture = physics::build_moisture_system(model, v_td);
    bvp::BoundarySpec v_bc = physics::build_moisture_boundary(model, left, right, t_new);
    bvp::SolveResult v_res = bvp::solve_bvp(moisture, v_bc, state.v_solution, options, pins);

    auto frozen_v = std::make_shared<const bvp::CollocationSolution>(v_res.solution);
    ImplicitTimeDerivative u_td = make_time_derivative(order, dt_star, u_now, state.u_previous);
    bvp::OdeSystem heat = physics::build_heat_system(model, u_td, v_td, frozen_v);
    bvp::BoundarySpec u_bc = physics::build_heat_boundary(model, left, right, t_new, frozen_v);
    bvp::SolveResult u_res = bvp::solve_bvp(heat, u_bc, state.u_solution, options, pins);

    next.v_solution = std::move(v_res.solution);
    next.u_solution = std::move(u_res.solution);
    next.v_stats = v_res.stats;
    next.u_stats = u_res.stats;
  } catch (const Error& e) {
    throw TimeLayerError(std::string(e.what()) + " (time layer " +
                             std::to_string(state.layer + 1) + ", t* = " + std::to_string(t_new) +
                             ")",
                         t_new, state.layer + 1);
  }

  next.v_previous = v_now;
  next.u_previous = u_now;
  return next;
}

SimulationSeries run_simulation(const DimensionlessModel& model, const BoundaryDriver& left,
                                const BoundaryDriver& right, const SpatialProfile& v_initial,
                                const SpatialProfile& u_initial, const TimeGrid& time,
                                const RunOptions& options) {
  SimulationSeries series;
  series.grid.resize(options.output_points);
  for (int i = 0; i < options.output_points; ++i) {
    series.grid[i] = static_cast<double>(i) / (options.output_points - 1);
  }

  const std::vector<double> pins = interface_coordinates(model);
  if (!pins.empty()) {
    series.interface.emplace();
    series.interface->x_int = pins.front();
  }

  auto snapshot = [&](const SimulationState& state) {
    FieldSnapshot snap;
    const int n = options.output_points;
    snap.v.resize(n);
    snap.u.resize(n);
    snap.theta.resize(n);
    snap.mu.resize(n);
    for (int i = 0; i < n; ++i) {
      const double x = series.grid[i];
      snap.v(i) = state.v_solution.value_at(x, 0);
      snap.theta(i) = state.v_solution.value_at(x, 1);
      snap.u(i) = state.u_solution.value_at(x, 0);
      snap.mu(i) = state.u_solution.value_at(x, 1);
    }
    series.snapshots.push_back(std::move(snap));
    series.times.push_back(state.t_star);
    if (series.interface) {
      InterfaceTrace& tr = *series.interface;
      const double xi = tr.x_int;
      double vl[2], dl[2], vr[2], dr[2], ul[2], dul[2], ur[2], dur[2];
      state.v_solution.evaluate_side(xi, bvp::Side::Left, vl, dl);
      state.v_solution.evaluate_side(xi, bvp::Side::Right, vr, dr);
      state.u_solution.evaluate_side(xi, bvp::Side::Left, ul, dul);
      state.u_solution.evaluate_side(xi, bvp::Side::Right, ur, dur);
      // one-sided closures: left limit uses the left layer
      const double eps = 1e-12;
      const auto cl = physics::eval_coefficients(model, vl[0], xi - eps);
      const auto cr = physics::eval_coefficients(model, vr[0], xi);
      tr.t.push_back(state.t_star);
      tr.moisture_flow_left.push_back(model.Fo_M * cl.kM * vl[1]);
      tr.moisture_flow_right.push_back(model.Fo_M * cr.kM * vr[1]);
      tr.heat_flux_left.push_back(model.Fo_T * (cl.kT * ul[1] + model.gamma2 * cl.kTM * vl[1]));
      tr.heat_flux_right.push_back(model.Fo_T * (cr.kT * ur[1] + model.gamma2 * cr.kTM * vr[1]));
      tr.v_jump.push_back(vr[0] - vl[0]);
      tr.u_jump.push_back(ur[0] - ul[0]);
      tr.theta_jump.push_back(vr[1] - vl[1]);
      tr.mu_jump.push_back(ur[1] - ul[1]);
    }
  };

  SimulationState state = make_initial_state(model, v_initial, u_initial, options.initial_nodes);
  snapshot(state);

  const int steps = time.step_count();
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 0; n < steps; ++n) {
    try {
      state = advance_step(state, model, left, right, options.solver, time.dt_star);
    } catch (const TimeLayerError& e) {
      series.error = e.what();
      series.failed_layer = e.layer;
      break;
    }
    snapshot(state);
    series.v_mesh_nodes.push_back(state.v_stats.final_nodes);
    series.u_mesh_nodes.push_back(state.u_stats.final_nodes);
    series.v_newton_iters.push_back(state.v_stats.newton_iterations);
    series.u_newton_iters.push_back(state.u_stats.newton_iterations);
    series.v_mesh_history.push_back(state.v_solution.mesh().nodes());
  }
  series.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return series;
}

}  // namespace mohl::stepper
