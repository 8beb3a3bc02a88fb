#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mohl/cases/presets.hpp"
#include "mohl/errors.hpp"
#include "mohl/physics/coupled.hpp"
#include "mohl/physics/material.hpp"
#include "mohl/physics/model.hpp"
#include "mohl/physics/saturation.hpp"

using namespace mohl;
using namespace mohl::physics;

namespace {

// straight power-sum polynomial evaluation, independent of the Horner path
double poly_direct(const std::vector<double>& desc, double v) {
  const int n = static_cast<int>(desc.size());
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += desc[i] * std::pow(v, n - 1 - i);
  return acc;
}

DimensionlessModel constant_model(double FoM, double FoT, double g1, double g2) {
  DimensionlessModel m;
  m.Fo_M = FoM;
  m.Fo_T = FoT;
  m.gamma1 = g1;
  m.gamma2 = g2;
  m.refs.Pv0 = 1000.0;
  m.refs.L = 0.1;
  m.refs.cM0 = m.refs.cT0 = m.refs.cTM0 = 1.0;
  m.refs.kM0 = m.refs.kT0 = m.refs.kTM0 = 1.0;
  m.layers = {{0.0, 1.0, unit_closure()}};
  return m;
}

}  // namespace

TEST_CASE("saturation pressure reproduces both paper-implied values") {
  // 1636.53 Pa at 70 % RH and 1166.91 Pa at 50 % RH, both at 293.15 K
  CHECK(saturation_pressure(293.15) == doctest::Approx(1636.53 / 0.7).epsilon(0.005));
  CHECK(saturation_pressure(293.15) == doctest::Approx(1166.91 / 0.5).epsilon(0.005));
  CHECK(saturation_pressure(303.15) > saturation_pressure(293.15));
  CHECK_THROWS_AS(saturation_pressure(200.0), OutOfRange);
  CHECK_THROWS_AS(saturation_pressure(400.0), OutOfRange);
}

TEST_CASE("total moisture transfer coefficient") {
  PhysicalMaterial mat = load_bearing_material();

  SUBCASE("vapour-only limit") {
    PhysicalMaterial dry = mat;
    dry.k_l = [](double) { return 0.0; };
    const double kM = total_moisture_transfer_coefficient(dry, 293.15, 1636.53, 0.7);
    CHECK(kM == doctest::Approx(mat.delta_v(0.7)).epsilon(1e-14));
  }
  SUBCASE("doubling the pressure halves the liquid term") {
    PhysicalMaterial wet = mat;
    wet.k_l = [](double) { return 1e-12; };
    const double k1 = total_moisture_transfer_coefficient(wet, 293.15, 1000.0, 0.7);
    const double k2 = total_moisture_transfer_coefficient(wet, 293.15, 2000.0, 0.7);
    const double dv = mat.delta_v(0.7);
    CHECK(k2 - dv == doctest::Approx(0.5 * (k1 - dv)).epsilon(1e-12));
  }
  SUBCASE("direct substitution of the printed closed forms") {
    const double T = 293.15, phi = 0.7, P_v = 1636.53;
    // independent evaluation of every factor
    const double s = -std::log(phi);
    const double w = 47.1 * std::pow(1.0 + std::pow(1692.94 * s, 1.65), -0.39) +
                     109.9 * std::pow(1.0 + std::pow(2437.83 * s, 6.0), -0.83);
    const double r = 1.0 - w / 157.0;
    const double delta_v = 6.413e-9 * r / (0.503 * r * r + 0.497);
    const double k_l = 2.52e-4 * std::exp(-1.55e6 * phi);
    const double expected = k_l * 1000.0 * 461.5 * T / P_v + delta_v;
    CHECK(total_moisture_transfer_coefficient(mat, T, P_v, phi) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("non-positive pressure rejected") {
    CHECK_THROWS_AS(total_moisture_transfer_coefficient(mat, 293.15, 0.0, 0.5),
                    NonPositivePressure);
  }
}

TEST_CASE("material property sanity over the validity range") {
  for (const PhysicalMaterial& mat :
       {load_bearing_material(), finishing_material(), wood_fibre_material()}) {
    double w_prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
      const double phi = 0.05 + (0.99 - 0.05) * i / 50.0;
      CHECK(mat.w(phi) > 0.0);
      CHECK(mat.delta_v(phi) > 0.0);
      CHECK(mat.k_l(phi) >= 0.0);
      CHECK(mat.lambda(phi, 293.15) > 0.0);
      CHECK(mat.w(phi) >= w_prev);  // monotone non-decreasing
      w_prev = mat.w(phi);
    }
  }
}

TEST_CASE("sorption derivative matches finite differences") {
  for (const PhysicalMaterial& mat :
       {load_bearing_material(), finishing_material(), wood_fibre_material()}) {
    for (int i = 1; i < 40; ++i) {
      const double phi = 0.1 + 0.8 * i / 40.0;
      const double h = 1e-6;
      const double fd = (mat.w(phi + h) - mat.w(phi - h)) / (2.0 * h);
      CHECK(mat.dw(phi) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("build_dimensionless_model computes the defining ratios") {
  // references printed for the single-layer configuration
  ReferenceValues refs;
  refs.T0 = 293.15;
  refs.t0 = 3600.0;
  refs.cM0 = 0.061;
  refs.cT0 = 8.6125e5;
  refs.cTM0 = 5.0963e3;
  refs.kM0 = 5.4712e-9;
  refs.kT0 = 0.3873;
  refs.kTM0 = 0.0154;
  // the published gamma values imply the 50 % RH reference pressure
  refs.Pv0 = 1166.91;
  ConvectiveCoefficients left{2e-7, 25.0};
  ConvectiveCoefficients right{3e-8, 8.0};
  auto model = build_dimensionless_model({{0.1, cases::single_layer_closure()}}, left, right,
                                         2.5e6, refs);

  // printed to two significant digits; match to printing precision
  CHECK(model.Fo_T == doctest::Approx(0.16).epsilon(0.025));
  CHECK(model.Fo_M == doctest::Approx(0.032).epsilon(0.025));
  CHECK(model.gamma1 == doctest::Approx(0.023).epsilon(0.025));
  CHECK(model.gamma2 == doctest::Approx(0.158).epsilon(0.01));
  CHECK(model.left.Bi_M == doctest::Approx(3.65).epsilon(0.01));
  CHECK(model.left.Bi_T == doctest::Approx(6.45).epsilon(0.01));

  SUBCASE("doubling L doubles Bi and quarters Fo") {
    auto doubled = build_dimensionless_model({{0.2, cases::single_layer_closure()}}, left,
                                             right, 2.5e6, refs);
    CHECK(doubled.left.Bi_M == doctest::Approx(2.0 * model.left.Bi_M).epsilon(1e-12));
    CHECK(doubled.right.Bi_T == doctest::Approx(2.0 * model.right.Bi_T).epsilon(1e-12));
    CHECK(doubled.Fo_M == doctest::Approx(0.25 * model.Fo_M).epsilon(1e-12));
    CHECK(doubled.Fo_T == doctest::Approx(0.25 * model.Fo_T).epsilon(1e-12));
    CHECK(doubled.gamma1 == doctest::Approx(model.gamma1).epsilon(1e-12));
  }
  SUBCASE("invalid references rejected") {
    ReferenceValues bad = refs;
    bad.kT0 = 0.0;
    CHECK_THROWS_AS(build_dimensionless_model({{0.1, unit_closure()}}, left, right, 2.5e6, bad),
                    InvalidReference);
  }
}

TEST_CASE("eval_coefficients piecewise lookup") {
  DimensionlessModel m = constant_model(0.032, 0.16, 0.0, 0.0);

  SUBCASE("single layer: independent of x*") {
    m.layers = {{0.0, 1.0, cases::single_layer_closure()}};
    const auto a = eval_coefficients(m, 1.1, 0.0);
    const auto b = eval_coefficients(m, 1.1, 0.63);
    const auto c = eval_coefficients(m, 1.1, 1.0);
    CHECK(a.kM == b.kM);
    CHECK(b.kM == c.kM);
  }
  SUBCASE("published power-law value at v = 1") {
    m.layers = {{0.0, 1.0, cases::single_layer_closure()}};
    CHECK(eval_coefficients(m, 1.0, 0.5).kM == doctest::Approx(20.275).epsilon(1e-12));
  }
  SUBCASE("two layers switch at the interface, half-open") {
    CoefficientClosure left_c = unit_closure();
    left_c.kM = ClosureFunction::constant(2.0);
    CoefficientClosure right_c = unit_closure();
    right_c.kM = ClosureFunction::constant(5.0);
    m.layers = {{0.0, 0.4, left_c}, {0.4, 1.0, right_c}};
    CHECK(eval_coefficients(m, 1.0, 0.4 - 1e-12).kM == doctest::Approx(2.0));
    CHECK(eval_coefficients(m, 1.0, 0.4).kM == doctest::Approx(5.0));  // x* >= x*_int
    CHECK(eval_coefficients(m, 1.0, 0.4 + 1e-12).kM == doctest::Approx(5.0));
    CHECK_THROWS_AS(eval_coefficients(m, 1.0, 1.5), OutOfDomain);
  }
}

TEST_CASE("closure derivatives match central finite differences") {
  struct Range {
    CoefficientClosure closure;
    double lo, hi;
  };
  const Range sets[] = {{cases::single_layer_closure(), 0.95, 1.70},
                        {cases::multilayer_load_bearing_closure(), 0.85, 1.90},
                        {cases::multilayer_finishing_closure(), 0.85, 1.90},
                        {cases::wood_fibre_closure(), 0.5, 1.8}};
  for (const Range& set : sets) {
    const ClosureFunction* fns[] = {&set.closure.cM, &set.closure.cT, &set.closure.cTM,
                                    &set.closure.kM, &set.closure.kT, &set.closure.kTM};
    for (const ClosureFunction* fn : fns) {
      for (int i = 0; i < 100; ++i) {
        const double v = set.lo + (set.hi - set.lo) * (i + 0.5) / 100.0;
        const double h = 1e-7 * std::max(std::abs(v), 1.0);
        const double fd = (fn->value(v + h) - fn->value(v - h)) / (2.0 * h);
        const double an = fn->derivative(v);
        CHECK(std::abs(an - fd) <= 1e-6 * std::max({std::abs(an), std::abs(fd), 1e-8}));
      }
    }
  }
}

TEST_CASE("coupled rhs coefficients") {
  SUBCASE("constant-property limit") {
    DimensionlessModel m = constant_model(0.032, 0.16, 0.023, 0.158);
    const auto r = coupled_rhs_coefficients(m, 1.0, 0.7, 0.5);
    CHECK(r.a_bar == 0.0);
    CHECK(r.e_bar == 0.0);
    CHECK(r.g_bar == 0.0);
    CHECK(r.h_bar == 0.0);
    CHECK(r.b_bar == doctest::Approx(0.16).epsilon(1e-14));
    CHECK(r.d_bar == doctest::Approx(0.032).epsilon(1e-14));
    CHECK(r.c_bar == doctest::Approx(0.032 * 0.023).epsilon(1e-14));
    CHECK(r.f_bar == doctest::Approx(0.16 * 0.158).epsilon(1e-14));
  }
  SUBCASE("zero gradient kills every gradient-bearing coefficient") {
    DimensionlessModel m = constant_model(0.032, 0.16, 0.023, 0.158);
    m.layers = {{0.0, 1.0, cases::single_layer_closure()}};
    const auto r = coupled_rhs_coefficients(m, 1.2, 0.0, 0.5);
    CHECK(r.a_bar == 0.0);
    CHECK(r.e_bar == 0.0);
    CHECK(r.g_bar == 0.0);
    CHECK(r.h_bar == 0.0);
  }
  SUBCASE("independent re-evaluation of each printed formula") {
    DimensionlessModel m = constant_model(0.032, 0.16, 0.023, 0.158);
    m.layers = {{0.0, 1.0, cases::single_layer_closure()}};
    const double v = 1.0, theta = 0.5;
    // every closure recomputed with direct power sums
    const double cM = poly_direct({169.5, -814.2, 534.4, 2625.0, -4642.0, 2217.0}, v) /
                      poly_direct({1.0, 2182.0, -12520.0, 27210.0, -26680.0, 10050.0}, v);
    const double cT = poly_direct({246.6, -778.9, 656.9}, v) /
                      poly_direct({1.0, -41.37, 395.2, -985.6, 760.7}, v);
    const double cTM = poly_direct({4207.0, -24860.0, 50920.0, -43030.0, 14570.0}, v) /
                       poly_direct({1.0, 8614.0, -28190.0, 23480.0}, v);
    const double kM = 4.045 * std::pow(v, 6.448) + 16.23;
    const double kT = poly_direct({15.3, -46.53, 38.04}, v) /
                      poly_direct({1.0, -10.46, 46.24, -85.34, 56.1}, v);
    const double kTM = poly_direct({1.644, -7.013, 7.505}, v) /
                       poly_direct({1.0, -3.133, 4.859, -8.003, 7.408}, v);
    const double h = 1e-7;
    auto dk = [&](auto f) { return (f(v + h) - f(v - h)) / (2.0 * h); };
    const double dkM = dk([&](double x) { return 4.045 * std::pow(x, 6.448) + 16.23; });
    const double dkT = dk([&](double x) {
      return poly_direct({15.3, -46.53, 38.04}, x) /
             poly_direct({1.0, -10.46, 46.24, -85.34, 56.1}, x);
    });
    const double dkTM = dk([&](double x) {
      return poly_direct({1.644, -7.013, 7.505}, x) /
             poly_direct({1.0, -3.133, 4.859, -8.003, 7.408}, x);
    });

    const auto r = coupled_rhs_coefficients(m, v, theta, 0.5);
    CHECK(r.a_bar == doctest::Approx(0.032 / cM * dkM * theta).epsilon(1e-6));
    CHECK(r.b_bar == doctest::Approx(0.16 * kT / cT).epsilon(1e-12));
    CHECK(r.c_bar == doctest::Approx(0.032 * 0.023 * kM * cTM / (cT * cM)).epsilon(1e-12));
    CHECK(r.d_bar == doctest::Approx(0.032 * kM / cM).epsilon(1e-12));
    CHECK(r.e_bar == doctest::Approx(0.16 / cT * dkT * theta).epsilon(1e-6));
    CHECK(r.f_bar == doctest::Approx(0.16 * 0.158 * kTM / cT).epsilon(1e-12));
    CHECK(r.g_bar == doctest::Approx(0.16 * 0.158 / cT * dkTM * theta).epsilon(1e-6));
    CHECK(r.h_bar ==
          doctest::Approx(0.032 * 0.023 * cTM / (cT * cM) * dkM * theta).epsilon(1e-6));
  }
}

TEST_CASE("coupled ODE systems") {
  DimensionlessModel m = constant_model(0.05, 0.2, 0.0, 0.0);

  SUBCASE("steady state with constant closures reduces to straight profiles") {
    auto sys = build_moisture_system(m, {});
    double y[2] = {1.3, 0.25};
    double f[2];
    sys.rhs(0.4, {y, 2}, {f, 2});
    CHECK(f[0] == doctest::Approx(0.25));
    CHECK(f[1] == doctest::Approx(0.0));
  }
  SUBCASE("constant time derivative gives theta_x = c/d_bar") {
    ImplicitTimeDerivative td;
    td.history = [](double) { return 0.7; };
    auto sys = build_moisture_system(m, td);
    double y[2] = {1.0, 0.0};
    double f[2];
    sys.rhs(0.5, {y, 2}, {f, 2});
    CHECK(f[1] == doctest::Approx(0.7 / 0.05).epsilon(1e-13));
  }
  SUBCASE("heat system requires the frozen moisture solution") {
    CHECK_THROWS_AS(build_heat_system(m, {}, {}, nullptr), MissingMoistureSolution);
    CHECK_THROWS_AS(build_ode_systems(m, {}, {}, nullptr), MissingMoistureSolution);
  }
  SUBCASE("first-layer rhs matches an independent scalar evaluation") {
    DimensionlessModel sl = constant_model(3.2e-2, 1.6e-1, 2.3e-2, 1.58e-1);
    sl.layers = {{0.0, 1.0, cases::single_layer_closure()}};
    const double dt = 0.1;
    ImplicitTimeDerivative td;
    td.leading = 1.0 / dt;
    td.history = [dt](double) { return -1.0 / dt; };  // uniform unit history
    auto sys = build_moisture_system(sl, td);
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double v = 1.04, theta = -0.12;
      double y[2] = {v, theta};
      double f[2];
      sys.rhs(x, {y, 2}, {f, 2});
      // independent: v_t/d - (a/d) theta with direct power-sum closures
      const double cM = poly_direct({169.5, -814.2, 534.4, 2625.0, -4642.0, 2217.0}, v) /
                        poly_direct({1.0, 2182.0, -12520.0, 27210.0, -26680.0, 10050.0}, v);
      const double kM = 4.045 * std::pow(v, 6.448) + 16.23;
      const double dkM = 4.045 * 6.448 * std::pow(v, 5.448);
      const double d_bar = 3.2e-2 * kM / cM;
      const double a_bar = 3.2e-2 / cM * dkM * theta;
      const double v_t = (v - 1.0) / dt;
      CHECK(f[0] == doctest::Approx(theta));
      CHECK(f[1] == doctest::Approx(v_t / d_bar - a_bar / d_bar * theta).epsilon(1e-10));
    }
  }
}

TEST_CASE("boundary residuals") {
  DimensionlessModel m = constant_model(0.032, 0.16, 0.023, 0.158);
  m.left = {3.65, 6.45, 0.13};
  m.right = {0.55, 2.06, 0.02};
  BoundaryDriver left = make_left_driver();
  BoundaryDriver right = make_right_driver();

  SUBCASE("equilibrium gives zero moisture residuals") {
    auto bc = build_moisture_boundary(m, left, right, 0.0);
    double yl[2] = {1.0, 0.0}, yr[2] = {1.0, 0.0}, res[2];
    bc.residual({yl, 2}, {yr, 2}, {res, 2});
    CHECK(res[0] == doctest::Approx(0.0));
    CHECK(res[1] == doctest::Approx(0.0));
  }
  SUBCASE("left flux balance: kM* = 1, theta = Bi (v - v_inf)") {
    const double v = 1.2;
    const double theta = 3.65 * (v - 1.0);
    auto bc = build_moisture_boundary(m, left, right, 0.0);
    double yl[2] = {v, theta}, yr[2] = {1.0, 0.0}, res[2];
    bc.residual({yl, 2}, {yr, 2}, {res, 2});
    CHECK(res[0] == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("single-layer left residual at t* = 0 vs independent evaluation") {
    auto c = cases::preset("single_layer");
    auto bc = build_moisture_boundary(c.model, c.left, c.right, 0.0);
    const double v = 1.0, theta = 0.2;
    double yl[2] = {v, theta}, yr[2] = {1.0, 0.0}, res[2];
    bc.residual({yl, 2}, {yr, 2}, {res, 2});
    const double v_inf = 0.7 * saturation_pressure(293.15) / 1636.53;
    const double kM = 4.045 * std::pow(v, 6.448) + 16.23;
    CHECK(res[0] == doctest::Approx(kM * theta - 3.65 * v + 3.65 * v_inf).epsilon(1e-12));
  }
  SUBCASE("dirichlet mode replaces the residual with value - driver") {
    left.mode = BcMode::Dirichlet;
    left.v_inf = TimeFunction::constant(1.25);
    auto bc = build_moisture_boundary(m, left, right, 0.0);
    double yl[2] = {1.3, 0.4}, yr[2] = {1.0, 0.0}, res[2];
    bc.residual({yl, 2}, {yr, 2}, {res, 2});
    CHECK(res[0] == doctest::Approx(1.3 - 1.25).epsilon(1e-14));
  }
  SUBCASE("heat Robin residual zero at thermal equilibrium") {
    bvp::Mesh mesh = bvp::Mesh::uniform(0.0, 1.0, 3);
    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(2, 3);
    vals.row(0).setConstant(1.0);
    auto frozen = std::make_shared<const bvp::CollocationSolution>(mesh, vals, vals * 0.0);
    auto bc = build_heat_boundary(m, left, right, 0.0, frozen);
    double yl[2] = {1.0, 0.0}, yr[2] = {1.0, 0.0}, res[2];
    bc.residual({yl, 2}, {yr, 2}, {res, 2});
    CHECK(res[0] == doctest::Approx(0.0));
    CHECK(res[1] == doctest::Approx(0.0));
    CHECK_THROWS_AS(build_heat_boundary(m, left, right, 0.0, nullptr),
                    MissingMoistureSolution);
  }
}

TEST_CASE("dimensional round-trip is exact to 1e-12") {
  ReferenceValues r;
  r.T0 = 293.15;
  r.Pv0 = 1636.53;
  r.t0 = 3600.0;
  r.L = 0.1;
  for (double T : {253.0, 293.15, 333.0}) {
    CHECK(to_dimensional_T(to_dimensionless_T(T, r), r) == doctest::Approx(T).epsilon(1e-12));
  }
  for (double Pv : {100.0, 1636.53, 3000.0}) {
    CHECK(to_dimensional_Pv(to_dimensionless_Pv(Pv, r), r) ==
          doctest::Approx(Pv).epsilon(1e-12));
  }
  CHECK(to_dimensional_x(to_dimensionless_x(0.073, r), r) == doctest::Approx(0.073).epsilon(1e-12));
  CHECK(to_dimensional_t(to_dimensionless_t(7200.0, r), r) ==
        doctest::Approx(7200.0).epsilon(1e-12));
}

TEST_CASE("driver periodicity and rain window") {
  auto c = cases::preset("multilayer");
  SUBCASE("sinusoidal drivers repeat after one period to 1e-12") {
    // joint period of the left ambient pair is 48 h
    for (double t : {0.0, 3.7, 11.2, 23.9}) {
      CHECK(c.left.u_inf(t) == doctest::Approx(c.left.u_inf(t + 24.0)).epsilon(1e-12));
      CHECK(c.left.v_inf(t) == doctest::Approx(c.left.v_inf(t + 48.0)).epsilon(1e-12));
      CHECK(c.right.v_inf(t) == doctest::Approx(c.right.v_inf(t + 72.0)).epsilon(1e-12));
    }
  }
  SUBCASE("rain pulse active only inside [40, 65]") {
    CHECK(c.left.g_inf(30.0) == 0.0);
    CHECK(c.left.g_inf(70.0) == 0.0);
    CHECK(c.left.g_inf(52.5) == doctest::Approx(3.8).epsilon(1e-6));
    CHECK(c.left.g_inf(45.0) > 0.0);
  }
}
