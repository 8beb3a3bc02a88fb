#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "mohl/physics/drivers.hpp"
#include "mohl/physics/model.hpp"
#include "mohl/physics/profile.hpp"
#include "mohl/stepper/stepper.hpp"

namespace mohl::reference {

/// Finite-difference grid for the method-of-lines references. Nodes are
/// uniform within each material layer so every interface is a grid node;
/// (node_count - 1) * dx_star spans [0, 1] up to per-layer rounding.
struct GridConfig {
  std::vector<double> nodes;
  double dx_star = 0.0;  // smallest spacing
  double dt_star = 0.0;

  static GridConfig build(const physics::DimensionlessModel& model, double dx_target,
                          double dt_star);
  int node_count() const { return static_cast<int>(nodes.size()); }
};

struct EulerOptions {
  double picard_tol = 1e-8;  // successive-iterate max-difference
  int picard_max = 200;
  double snapshot_dt = 0.1;
  bool disable_cfl_guard = false;  // test hook for the divergence experiment
  double v_range_min = 0.5, v_range_max = 2.0;  // operating range for the CFL bound
};

struct ReferenceSeries {
  std::vector<double> times;
  std::vector<double> grid;
  std::vector<Eigen::VectorXd> v, u;
  long total_steps = 0;
  long picard_iterations = 0;
  double picard_tol = 0.0;
  double solve_seconds = 0.0;
  std::optional<std::string> error;
  int failed_layer = -1;
};

/// Largest stable explicit step dt* <= dx*^2 * min(c*/(2 Fo k*)), minimized
/// over both equations and the operating v-range of every layer.
double explicit_stability_bound(const physics::DimensionlessModel& model, double dx_min,
                                double v_min, double v_max);

/// Implicit Euler in time, second-order central differences in space,
/// frozen-coefficient Picard iterations per step. Interface half-nodes mix
/// layer coefficients harmonically.
ReferenceSeries euler_implicit_run(const physics::DimensionlessModel& model,
                                   const physics::BoundaryDriver& left,
                                   const physics::BoundaryDriver& right,
                                   const physics::SpatialProfile& v_initial,
                                   const physics::SpatialProfile& u_initial, double tau_star,
                                   const GridConfig& grid, const EulerOptions& options);

/// Forward Euler with previous-step coefficients; refuses to run above the
/// stability bound unless the guard is disabled.
ReferenceSeries euler_explicit_run(const physics::DimensionlessModel& model,
                                   const physics::BoundaryDriver& left,
                                   const physics::BoundaryDriver& right,
                                   const physics::SpatialProfile& v_initial,
                                   const physics::SpatialProfile& u_initial, double tau_star,
                                   const GridConfig& grid, const EulerOptions& options);

}  // namespace mohl::reference
