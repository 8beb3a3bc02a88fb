#pragma once

#include <optional>
#include <string>

#include "mohl/bvp/solver.hpp"
#include "mohl/physics/drivers.hpp"
#include "mohl/physics/model.hpp"
#include "mohl/physics/profile.hpp"
#include "mohl/stepper/stepper.hpp"

namespace mohl::cases {

/// Piecewise-diffusivity elliptic benchmark on [-1, 1] with the two closed
/// forms that differ in the interface closure: Analytical-A keeps the flux
/// continuous, Analytical-B the solution derivative.
enum class InterfaceMode { FluxContinuous, DerivativeContinuous };

struct InterfaceBenchmark {
  double k1 = 1.0, k2 = 5.0;
  InterfaceMode mode = InterfaceMode::DerivativeContinuous;

  double c_a() const { return (k2 - k1) / (k2 + k1); }
  double c_b() const;
  double constant() const { return mode == InterfaceMode::FluxContinuous ? c_a() : c_b(); }
};

double interface_analytic_solution(const InterfaceBenchmark& bench, double x);
double interface_analytic_derivative(const InterfaceBenchmark& bench, double x);

/// Collocation solve of the benchmark (interface pinned at x = 0).
bvp::SolveResult solve_interface_benchmark(const InterfaceBenchmark& bench,
                                           const bvp::SolverOptions& options,
                                           int initial_nodes = 11);

/// Interior sensor reference series for the measurement-driven case.
struct SensorSeries {
  double x_star = 0.0;
  double sigma_pos = 0.0;  // position uncertainty [m]
  std::vector<double> t;   // t*
  std::vector<double> T;   // [K]
  std::vector<double> Pv;  // [Pa]
};

/// Everything a run needs: model, drivers, initial fields, time grid,
/// solver settings and the operating v-range used by positivity checks and
/// the explicit CFL guard.
struct CaseConfig {
  std::string name;
  physics::DimensionlessModel model;
  physics::BoundaryDriver left, right;
  physics::SpatialProfile v_initial, u_initial;
  double dt_star = 0.1;
  double tau_star = 0.0;
  bvp::SolverOptions solver;
  int initial_nodes = 10;
  int output_points = 201;
  double v_range_min = 0.5, v_range_max = 2.0;
  std::vector<SensorSeries> sensors;                 // experimental case only
  std::optional<InterfaceBenchmark> interface_only;  // set for the elliptic benchmark
};

/// Built-in presets: "single_layer", "multilayer", "experimental" (needs a
/// sensor CSV), "appendix_c" naming is accepted as "interface_benchmark".
CaseConfig preset(const std::string& name, const std::string& sensor_csv_path = "");

// Dimensionless property closures of the built-in materials, one set per
// case scaling.
physics::CoefficientClosure single_layer_closure();
physics::CoefficientClosure multilayer_load_bearing_closure();
physics::CoefficientClosure multilayer_finishing_closure();
physics::CoefficientClosure wood_fibre_closure();

/// MOHL run of a transient case.
stepper::SimulationSeries run_mohl(const CaseConfig& c);

}  // namespace mohl::cases
