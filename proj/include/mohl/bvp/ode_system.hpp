#pragma once

#include <functional>
#include <span>

namespace mohl::bvp {

/// First-order ODE system y'(x) = f(x, y) on an interval.
///
/// `rhs` writes the derivative of the state into `dydx` (length = dimension).
/// `jacobian`, when provided, writes df/dy column-major into `jac`
/// (dimension x dimension). Without it the solver falls back to central
/// finite differences with step sqrt(eps)*max(|y|, 1).
struct OdeSystem {
  int dimension = 0;
  std::function<void(double x, std::span<const double> y, std::span<double> dydx)> rhs;
  std::function<void(double x, std::span<const double> y, std::span<double> jac)> jacobian;
};

/// Two-point boundary conditions psi(y(a), y(b)) = 0.
/// The residual vector has the same length as the system dimension.
struct BoundarySpec {
  std::function<void(std::span<const double> y_left, std::span<const double> y_right,
                     std::span<double> residual)>
      residual;
};

}  // namespace mohl::bvp
