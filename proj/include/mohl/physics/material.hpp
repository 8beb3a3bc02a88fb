#pragma once

#include <functional>
#include <string>

namespace mohl::physics {

/// Dimensional hygrothermal material model. Property closures are functions
/// of relative humidity phi in (0, 1); thermal conductivity may also depend
/// on temperature.
struct PhysicalMaterial {
  std::string name;
  double rho0_c0 = 0.0;   // volumetric thermal capacity [J/(m^3 K)]
  double c_w = 4180.0;    // water specific heat [J/(kg K)]
  double L_v = 2.5e6;     // latent heat of evaporation [J/kg]
  double R_v = 461.5;     // water vapour gas constant [J/(kg K)]
  double rho_l = 1000.0;  // liquid water density [kg/m^3]

  std::function<double(double phi)> w;        // sorption isotherm [kg/m^3]
  std::function<double(double phi)> dw;       // d w / d phi
  std::function<double(double phi)> delta_v;  // vapour permeability [s]
  std::function<double(double phi)> k_l;      // liquid permeability [s]
  std::function<double(double phi, double T)> lambda;  // thermal conductivity [W/(m K)]
};

/// Built-in material presets.
PhysicalMaterial load_bearing_material();
PhysicalMaterial finishing_material();
PhysicalMaterial wood_fibre_material();  // liquid transfer neglected

/// k_M = k_l * rho_l * R_v * T / P_v + delta_v, the total moisture transfer
/// coefficient under a vapour pressure gradient [s].
double total_moisture_transfer_coefficient(const PhysicalMaterial& mat, double T, double P_v,
                                           double phi);

/// All six storage/transfer coefficients at a dimensional state, used to
/// derive reference values and for direct-substitution checks.
struct DimensionalCoefficients {
  double cM, cT, cTM, kM, kT, kTM;
};
DimensionalCoefficients dimensional_coefficients(const PhysicalMaterial& mat, double T,
                                                 double phi);

}  // namespace mohl::physics
