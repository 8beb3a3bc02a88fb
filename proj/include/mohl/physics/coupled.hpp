#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "mohl/bvp/ode_system.hpp"
#include "mohl/bvp/solution.hpp"
#include "mohl/physics/drivers.hpp"
#include "mohl/physics/model.hpp"

namespace mohl::physics {

/// Effective coefficients of the decomposed first-order systems for one
/// (v, theta, x*) state. b_bar and d_bar stay positive whenever the closures
/// do.
struct CoupledRhsCoefficients {
  double a_bar, b_bar, c_bar, d_bar, e_bar, f_bar, g_bar, h_bar;
};

CoupledRhsCoefficients coupled_rhs_coefficients(const DimensionlessModel& model, double v,
                                                double theta, double x_star);

/// Semi-discrete time derivative split into the implicit part acting on the
/// unknown field and the frozen history part, so that
///   field_t(x) = leading * field(x) + history(x).
/// The history is evaluated through the stored collocation polynomials of the
/// previous layers, not through grid interpolation.
struct ImplicitTimeDerivative {
  double leading = 0.0;
  std::function<double(double x_star)> history = [](double) { return 0.0; };
};

/// Moisture system: v_x = theta, theta_x = v_t/d_bar - (a_bar/d_bar) theta.
bvp::OdeSystem build_moisture_system(const DimensionlessModel& model,
                                     ImplicitTimeDerivative v_time_derivative);

/// Heat system with the moisture solution of the same layer frozen in:
///   u_x = mu,
///   mu_x = u_t/b_bar + (c_bar - f_bar)/b_bar theta_x
///        + (h_bar - g_bar)/b_bar theta - (e_bar/b_bar) mu,
/// where theta_x comes from evaluating the moisture right-hand side at the
/// frozen (v, theta), not from differentiating the polynomial twice.
bvp::OdeSystem build_heat_system(const DimensionlessModel& model,
                                 ImplicitTimeDerivative u_time_derivative,
                                 ImplicitTimeDerivative v_time_derivative,
                                 std::shared_ptr<const bvp::CollocationSolution> frozen_v);

/// Both systems at once; throws MissingMoistureSolution without frozen_v.
std::pair<bvp::OdeSystem, bvp::OdeSystem> build_ode_systems(
    const DimensionlessModel& model, ImplicitTimeDerivative v_time_derivative,
    ImplicitTimeDerivative u_time_derivative,
    std::shared_ptr<const bvp::CollocationSolution> frozen_v);

bvp::BoundarySpec build_moisture_boundary(const DimensionlessModel& model,
                                          const BoundaryDriver& left,
                                          const BoundaryDriver& right, double t_star);

/// Robin mode needs the frozen moisture solution for the wall values of v
/// and theta entering the heat residuals.
bvp::BoundarySpec build_heat_boundary(const DimensionlessModel& model,
                                      const BoundaryDriver& left, const BoundaryDriver& right,
                                      double t_star,
                                      std::shared_ptr<const bvp::CollocationSolution> frozen_v);

std::pair<bvp::BoundarySpec, bvp::BoundarySpec> build_boundary_residuals(
    const DimensionlessModel& model, const BoundaryDriver& left, const BoundaryDriver& right,
    double t_star, std::shared_ptr<const bvp::CollocationSolution> frozen_v);

}  // namespace mohl::physics
