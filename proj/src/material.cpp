#include "mohl/physics/material.hpp"

#include <cmath>

#include "mohl/errors.hpp"
#include "mohl/physics/saturation.hpp"

namespace mohl::physics {

namespace {

// d/dphi of c * [1 + (a * (-ln phi))^p]^q
double vg_term(double phi, double c, double a, double p, double q) {
  const double s = -std::log(phi);
  const double x = std::pow(a * s, p);
  return c * std::pow(1.0 + x, q);
}

double vg_term_dphi(double phi, double c, double a, double p, double q) {
  const double s = -std::log(phi);
  const double x = std::pow(a * s, p);
  const double dx_dphi = -p * x / (s * phi);
  return c * q * std::pow(1.0 + x, q - 1.0) * dx_dphi;
}

}  // namespace

PhysicalMaterial load_bearing_material() {
  PhysicalMaterial m;
  m.name = "load_bearing";
  m.rho0_c0 = 2005.0 * 840.0;
  m.w = [](double phi) {
    return vg_term(phi, 47.1, 1692.94, 1.65, -0.39) + vg_term(phi, 109.9, 2437.83, 6.0, -0.83);
  };
  m.dw = [](double phi) {
    return vg_term_dphi(phi, 47.1, 1692.94, 1.65, -0.39) +
           vg_term_dphi(phi, 109.9, 2437.83, 6.0, -0.83);
  };
  m.delta_v = [w = m.w](double phi) {
    const double r = 1.0 - w(phi) / 157.0;
    return 6.413e-9 * r / (0.503 * r * r + 0.497);
  };
  m.k_l = [](double phi) { return 2.52e-4 * std::exp(-1.55e6 * phi); };
  m.lambda = [w = m.w](double phi, double) { return 0.5 + 0.0045 * w(phi); };
  return m;
}

PhysicalMaterial finishing_material() {
  PhysicalMaterial m;
  m.name = "finishing";
  m.rho0_c0 = 790.0 * 870.0;
  m.w = [](double phi) { return vg_term(phi, 209.0, 2.7e14, 1.27, -0.21); };
  m.dw = [](double phi) { return vg_term_dphi(phi, 209.0, 2.7e14, 1.27, -0.21); };
  m.delta_v = [w = m.w](double phi) {
    const double r = 1.0 - w(phi) / 209.0;
    return 6.413e-9 * r / (0.503 * r * r + 0.497);
  };
  m.k_l = [w = m.w](double phi) {
    const double d = w(phi) - 120.0;
    const double d2 = d * d;
    return std::exp(-33.0 + 0.0704 * d - 1.742e-4 * d2 - 2.795e-6 * d2 * d -
                    1.157e-7 * d2 * d2 + 2.597e-9 * d2 * d2 * d);
  };
  m.lambda = [w = m.w](double phi, double) { return 0.2 + 0.0045 * w(phi); };
  return m;
}

PhysicalMaterial wood_fibre_material() {
  PhysicalMaterial m;
  m.name = "wood_fibre";
  m.rho0_c0 = 1103.0 * 146.0;
  // correlation takes relative humidity in percent
  m.w = [](double phi) {
    const double x = 100.0 * phi;
    return 7.063e-5 * x * x * x - 0.00736 * x * x + 0.4105 * x + 0.2688;
  };
  m.dw = [](double phi) {
    const double x = 100.0 * phi;
    return 100.0 * (3.0 * 7.063e-5 * x * x - 2.0 * 0.00736 * x + 0.4105);
  };
  m.delta_v = [](double phi) { return 4.85e-13 * (100.0 * phi) + 3.28e-11; };
  m.k_l = [](double) { return 0.0; };
  m.lambda = [w = m.w, rho_l = m.rho_l](double phi, double T) {
    return 0.038 + 0.192 * w(phi) / rho_l + 1.08e-4 * T;
  };
  return m;
}

double total_moisture_transfer_coefficient(const PhysicalMaterial& mat, double T, double P_v,
                                           double phi) {
  if (!(P_v > 0.0)) throw NonPositivePressure("vapour pressure must be positive");
  return mat.k_l(phi) * mat.rho_l * mat.R_v * T / P_v + mat.delta_v(phi);
}

DimensionalCoefficients dimensional_coefficients(const PhysicalMaterial& mat, double T,
                                                 double phi) {
  const double Ps = saturation_pressure(T);
  const double P_v = phi * Ps;
  DimensionalCoefficients c;
  c.cM = mat.dw(phi) / Ps;
  c.cT = mat.rho0_c0 + mat.w(phi) * mat.c_w;
  c.cTM = mat.c_w * T * mat.dw(phi) / Ps;
  c.kM = total_moisture_transfer_coefficient(mat, T, P_v, phi);
  c.kT = mat.lambda(phi, T);
  c.kTM = mat.L_v * mat.delta_v(phi);
  return c;
}

}  // namespace mohl::physics
