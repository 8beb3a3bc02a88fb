#include "mohl/physics/model.hpp"

#include <cmath>

#include "mohl/errors.hpp"
#include "mohl/physics/saturation.hpp"

namespace mohl::physics {

const Layer& DimensionlessModel::layer_at(double x_star) const {
  if (x_star < 0.0 || x_star > 1.0) throw OutOfDomain("x* outside [0, 1]");
  for (const Layer& layer : layers) {
    if (x_star < layer.x_end || &layer == &layers.back()) return layer;
  }
  return layers.back();
}

void DimensionlessModel::assert_positivity(double v_min, double v_max, int samples) const {
  for (const Layer& layer : layers) {
    for (int i = 0; i <= samples; ++i) {
      const double v = v_min + (v_max - v_min) * static_cast<double>(i) / samples;
      const double vals[5] = {layer.closure.cM.value(v), layer.closure.cT.value(v),
                              layer.closure.kM.value(v), layer.closure.kT.value(v),
                              layer.closure.kTM.value(v)};
      for (double val : vals) {
        if (!(val > 0.0) || !std::isfinite(val)) {
          throw InvalidReference("closure not positive over the operating v-range");
        }
      }
    }
  }
}

CoefficientSet eval_coefficients(const DimensionlessModel& model, double v, double x_star) {
  const CoefficientClosure& c = model.layer_at(x_star).closure;
  CoefficientSet out;
  out.cM = c.cM.value(v);
  out.cT = c.cT.value(v);
  out.cTM = c.cTM.value(v);
  out.kM = c.kM.value(v);
  out.kT = c.kT.value(v);
  out.kTM = c.kTM.value(v);
  out.dkM = c.kM.derivative(v);
  out.dkT = c.kT.derivative(v);
  out.dkTM = c.kTM.derivative(v);
  return out;
}

DimensionlessModel build_dimensionless_model(
    const std::vector<std::pair<double, CoefficientClosure>>& layers,
    const ConvectiveCoefficients& left, const ConvectiveCoefficients& right, double latent_heat,
    const ReferenceValues& refs) {
  if (layers.empty()) throw InvalidReference("model needs at least one layer");
  for (double r : {refs.T0, refs.Pv0, refs.t0, refs.cM0, refs.cT0, refs.cTM0, refs.kM0,
                   refs.kT0, refs.kTM0}) {
    if (!(r > 0.0)) throw InvalidReference("reference values must be positive");
  }
  double L = 0.0;
  for (const auto& [thickness, closure] : layers) {
    if (!(thickness > 0.0)) throw InvalidReference("layer thickness must be positive");
    L += thickness;
  }

  DimensionlessModel m;
  m.refs = refs;
  m.refs.L = L;
  m.Fo_M = refs.t0 * refs.kM0 / (L * L * refs.cM0);
  m.Fo_T = refs.t0 * refs.kT0 / (L * L * refs.cT0);
  m.gamma1 = refs.cTM0 * refs.Pv0 / (refs.cT0 * refs.T0);
  m.gamma2 = refs.kTM0 * refs.Pv0 / (refs.kT0 * refs.T0);
  m.left.Bi_M = left.h_M * L / refs.kM0;
  m.left.Bi_T = left.h_T * L / refs.kT0;
  m.left.Bi_TM = left.h_M * L * latent_heat / refs.kTM0;
  m.right.Bi_M = right.h_M * L / refs.kM0;
  m.right.Bi_T = right.h_T * L / refs.kT0;
  m.right.Bi_TM = right.h_M * L * latent_heat / refs.kTM0;

  double x = 0.0;
  for (const auto& [thickness, closure] : layers) {
    Layer layer;
    layer.x_begin = x / L;
    x += thickness;
    layer.x_end = x / L;
    layer.closure = closure;
    m.layers.push_back(std::move(layer));
  }
  m.layers.back().x_end = 1.0;
  return m;
}

ReferenceValues reference_values_from_material(const PhysicalMaterial& mat, double T0,
                                               double phi0, double t0, double L) {
  DimensionalCoefficients c = dimensional_coefficients(mat, T0, phi0);
  ReferenceValues r;
  r.T0 = T0;
  r.Pv0 = phi0 * saturation_pressure(T0);
  r.t0 = t0;
  r.L = L;
  r.cM0 = c.cM;
  r.cT0 = c.cT;
  r.cTM0 = c.cTM;
  r.kM0 = c.kM;
  r.kT0 = c.kT;
  r.kTM0 = c.kTM;
  return r;
}

}  // namespace mohl::physics
