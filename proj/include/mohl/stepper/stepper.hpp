#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mohl/bvp/solver.hpp"
#include "mohl/physics/coupled.hpp"
#include "mohl/physics/drivers.hpp"
#include "mohl/physics/model.hpp"
#include "mohl/physics/profile.hpp"

namespace mohl::stepper {

/// Uniform discretization of [0, tau*].
struct TimeGrid {
  double dt_star = 0.1;
  double tau_star = 0.0;
  int step_count() const { return static_cast<int>(std::llround(tau_star / dt_star)); }
};

/// Fields of one time layer plus the history the backward differences need.
struct SimulationState {
  double t_star = 0.0;
  int layer = 0;
  bvp::CollocationSolution v_solution, u_solution;
  // previous layer; null at start (first step runs BDF1)
  std::shared_ptr<const bvp::CollocationSolution> v_previous, u_previous;
  bvp::SolveStats v_stats, u_stats;
};

/// Backward-difference time derivative on plain field samples.
/// history[0] is the previous layer, history[1] the one before.
/// order 1: (u^n - u^{n-1}) / dt; order 2: (3 u^n - 4 u^{n-1} + u^{n-2}) / (2 dt).
std::vector<double> bdf_time_derivative(const std::vector<std::vector<double>>& history,
                                        const std::vector<double>& current, double dt_star,
                                        int order);

struct RunOptions {
  bvp::SolverOptions solver;
  int output_points = 201;
  int initial_nodes = 10;
};

/// One layer of the weakly coupled march: solve the moisture BVP at t + dt,
/// then the heat BVP with the fresh moisture solution frozen into its
/// right-hand side and boundary conditions. Previous solutions serve as
/// initial guesses; the first step uses BDF1, later steps BDF2.
SimulationState advance_step(const SimulationState& state, const physics::DimensionlessModel& model,
                             const physics::BoundaryDriver& left,
                             const physics::BoundaryDriver& right,
                             const bvp::SolverOptions& options, double dt_star);

struct FieldSnapshot {
  Eigen::VectorXd v, u, theta, mu;
};

/// One-sided traces at a layer interface (multilayer runs only):
/// field continuity is exact by construction; the flux jump is reported.
struct InterfaceTrace {
  double x_int = 0.0;
  std::vector<double> t;
  std::vector<double> heat_flux_left, heat_flux_right;  // Fo_T (kT* mu + g2 kTM* theta)
  std::vector<double> moisture_flow_left, moisture_flow_right;  // Fo_M kM* theta
  std::vector<double> v_jump, u_jump, theta_jump, mu_jump;
};

struct SimulationSeries {
  std::vector<double> times;  // includes t* = 0
  std::vector<double> grid;   // output x* grid
  std::vector<FieldSnapshot> snapshots;
  std::vector<int> v_mesh_nodes, u_mesh_nodes;    // per computed layer
  std::vector<int> v_newton_iters, u_newton_iters;
  std::vector<std::vector<double>> v_mesh_history;  // mesh nodes per layer (density studies)
  std::optional<InterfaceTrace> interface;
  // set when the march failed; snapshots up to the failure are kept
  std::optional<std::string> error;
  int failed_layer = -1;
  double solve_seconds = 0.0;  // wall clock around the solve loop only
};

SimulationSeries run_simulation(const physics::DimensionlessModel& model,
                                const physics::BoundaryDriver& left,
                                const physics::BoundaryDriver& right,
                                const physics::SpatialProfile& v_initial,
                                const physics::SpatialProfile& u_initial, const TimeGrid& time,
                                const RunOptions& options);

/// Initial state representation on a uniform mesh (pinned interfaces added).
SimulationState make_initial_state(const physics::DimensionlessModel& model,
                                   const physics::SpatialProfile& v_initial,
                                   const physics::SpatialProfile& u_initial, int nodes);

}  // namespace mohl::stepper
