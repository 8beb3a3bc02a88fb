#pragma once

#include <vector>

#include "mohl/physics/model.hpp"
#include "mohl/stepper/stepper.hpp"

namespace mohl::post {

/// Dimensional flux traces at a fixed coordinate.
struct FluxSeries {
  std::vector<double> t;    // t* (dimensionless; scale by t0 for seconds)
  std::vector<double> q_s;  // sensible heat flux [W/m^2]
  std::vector<double> q_l;  // latent heat flux [W/m^2]
  std::vector<double> g;    // moisture flow [kg/(m^2 s)]
  double x0 = 0.0;          // evaluation coordinate [m]
};

/// Fluxes from the stored dimensionless gradients (theta, mu) scaled back to
/// dimensional units: q_s = -k_T0 k_T*(v) (T0/L) mu, etc. x0 is dimensional
/// in [0, L] and snaps to the nearest output-grid point.
FluxSeries boundary_fluxes(const stepper::SimulationSeries& series,
                           const physics::DimensionlessModel& model, double x0);

/// Integral audit of the moisture balance: the stored-moisture functional
/// uses the antiderivative of c*_M so its rate equals the wall fluxes
/// exactly for the continuous problem.
struct MassBudget {
  std::vector<double> t;
  std::vector<double> stored;         // M(t) relative to M(0)
  std::vector<double> step_residual;  // |dM - flux integral| per step
  double aggregate_closure = 0.0;     // end-to-end relative defect
};

MassBudget mass_budget(const stepper::SimulationSeries& series,
                       const physics::DimensionlessModel& model);

}  // namespace mohl::post
