#pragma once

#include <utility>
#include <vector>

#include "mohl/physics/closure.hpp"
#include "mohl/physics/material.hpp"

namespace mohl::physics {

/// Reference values that fix the scaling between dimensional and
/// dimensionless quantities.
struct ReferenceValues {
  double T0 = 293.15;   // K
  double Pv0 = 0.0;     // Pa
  double t0 = 3600.0;   // s
  double L = 0.0;       // m
  double cM0 = 0.0, cT0 = 0.0, cTM0 = 0.0;
  double kM0 = 0.0, kT0 = 0.0, kTM0 = 0.0;
};

struct SideBiot {
  double Bi_M = 0.0, Bi_T = 0.0, Bi_TM = 0.0;
};

struct Layer {
  double x_begin = 0.0, x_end = 1.0;  // dimensionless bounds
  CoefficientClosure closure;
};

/// Scaled transport model: Fourier/Biot/coupling numbers plus per-layer
/// coefficient closures over [0, 1]. Immutable after construction.
struct DimensionlessModel {
  double Fo_M = 0.0, Fo_T = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
  SideBiot left, right;
  ReferenceValues refs;
  std::vector<Layer> layers;

  /// Half-open layer lookup: x* < x*_int selects the left layer, x* >= x*_int
  /// the right one. Throws OutOfDomain outside [0, 1].
  const Layer& layer_at(double x_star) const;

  /// Samples c*_M, c*_T, k*_M, k*_T, k*_TM over [v_min, v_max] in every layer
  /// and throws InvalidReference on a non-positive value.
  void assert_positivity(double v_min, double v_max, int samples = 200) const;
};

/// All six closure values plus the three transfer-coefficient derivatives at
/// (v, x*).
struct CoefficientSet {
  double cM, cT, cTM, kM, kT, kTM;
  double dkM, dkT, dkTM;
};

CoefficientSet eval_coefficients(const DimensionlessModel& model, double v, double x_star);

struct ConvectiveCoefficients {
  double h_M = 0.0;  // s/m
  double h_T = 0.0;  // W/(m^2 K)
};

/// Assembles the dimensionless model from layer thicknesses [m], closures,
/// convective coefficients and reference values, computing Fo, Bi and gamma
/// exactly from their definitions (Bi_M = h_M L / k_M0, Fo_T = t0 k_T0 /
/// (L^2 c_T0), ...). latent_heat enters Bi_TM.
DimensionlessModel build_dimensionless_model(
    const std::vector<std::pair<double, CoefficientClosure>>& layers,
    const ConvectiveCoefficients& left, const ConvectiveCoefficients& right, double latent_heat,
    const ReferenceValues& refs);

/// Reference coefficients from a material at the reference state (T0,
/// phi0); convenience for building refs from dimensional inputs.
ReferenceValues reference_values_from_material(const PhysicalMaterial& mat, double T0,
                                               double phi0, double t0, double L);

// dimensional <-> dimensionless transformations
inline double to_dimensionless_T(double T, const ReferenceValues& r) { return T / r.T0; }
inline double to_dimensional_T(double u, const ReferenceValues& r) { return u * r.T0; }
inline double to_dimensionless_Pv(double Pv, const ReferenceValues& r) { return Pv / r.Pv0; }
inline double to_dimensional_Pv(double v, const ReferenceValues& r) { return v * r.Pv0; }
inline double to_dimensionless_x(double x, const ReferenceValues& r) { return x / r.L; }
inline double to_dimensional_x(double xs, const ReferenceValues& r) { return xs * r.L; }
inline double to_dimensionless_t(double t, const ReferenceValues& r) { return t / r.t0; }
inline double to_dimensional_t(double ts, const ReferenceValues& r) { return ts * r.t0; }

}  // namespace mohl::physics
