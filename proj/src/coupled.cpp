#include "mohl/physics/coupled.hpp"

#include "mohl/errors.hpp"

namespace mohl::physics {

CoupledRhsCoefficients coupled_rhs_coefficients(const DimensionlessModel& model, double v,
                                                double theta, double x_star) {
  const CoefficientSet c = eval_coefficients(model, v, x_star);
  CoupledRhsCoefficients r;
  r.a_bar = model.Fo_M / c.cM * c.dkM * theta;
  r.b_bar = model.Fo_T * c.kT / c.cT;
  r.c_bar = model.Fo_M * model.gamma1 * c.kM * c.cTM / (c.cT * c.cM);
  r.d_bar = model.Fo_M * c.kM / c.cM;
  r.e_bar = model.Fo_T / c.cT * c.dkT * theta;
  r.f_bar = model.Fo_T * model.gamma2 * c.kTM / c.cT;
  r.g_bar = model.Fo_T * model.gamma2 / c.cT * c.dkTM * theta;
  r.h_bar = model.Fo_M * model.gamma1 * c.cTM / (c.cT * c.cM) * c.dkM * theta;
  return r;
}

bvp::OdeSystem build_moisture_system(const DimensionlessModel& model,
                                     ImplicitTimeDerivative v_time_derivative) {
  bvp::OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [&model, td = std::move(v_time_derivative)](double x, std::span<const double> y,
                                                        std::span<double> f) {
    const double v = y[0];
    const double theta = y[1];
    const CoefficientSet c = eval_coefficients(model, v, x);
    const double d_bar = model.Fo_M * c.kM / c.cM;
    const double a_bar = model.Fo_M / c.cM * c.dkM * theta;
    const double v_t = td.leading * v + td.history(x);
    f[0] = theta;
    f[1] = v_t / d_bar - (a_bar / d_bar) * theta;
  };
  return sys;
}

bvp::OdeSystem build_heat_system(const DimensionlessModel& model,
                                 ImplicitTimeDerivative u_time_derivative,
                                 ImplicitTimeDerivative v_time_derivative,
                                 std::shared_ptr<const bvp::CollocationSolution> frozen_v) {
  if (!frozen_v) {
    throw MissingMoistureSolution("heat system needs the moisture solution of the same layer");
  }
  bvp::OdeSystem moisture = build_moisture_system(model, v_time_derivative);
  bvp::OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [&model, utd = std::move(u_time_derivative), moisture = std::move(moisture),
             frozen_v](double x, std::span<const double> y, std::span<double> f) {
    const double u = y[0];
    const double mu = y[1];
    double vv[2], dv[2];
    frozen_v->evaluate(x, vv, dv);
    const double v = vv[0];
    const double theta = vv[1];
    double fv[2];
    moisture.rhs(x, vv, fv);
    const double theta_x = fv[1];
    const CoupledRhsCoefficients r = coupled_rhs_coefficients(model, v, theta, x);
    const double u_t = utd.leading * u + utd.history(x);
    f[0] = mu;
    f[1] = u_t / r.b_bar + (r.c_bar - r.f_bar) / r.b_bar * theta_x +
           (r.h_bar - r.g_bar) / r.b_bar * theta - (r.e_bar / r.b_bar) * mu;
  };
  return sys;
}

std::pair<bvp::OdeSystem, bvp::OdeSystem> build_ode_systems(
    const DimensionlessModel& model, ImplicitTimeDerivative v_time_derivative,
    ImplicitTimeDerivative u_time_derivative,
    std::shared_ptr<const bvp::CollocationSolution> frozen_v) {
  bvp::OdeSystem heat =
      build_heat_system(model, std::move(u_time_derivative), v_time_derivative, frozen_v);
  bvp::OdeSystem moisture = build_moisture_system(model, std::move(v_time_derivative));
  return {std::move(moisture), std::move(heat)};
}

bvp::BoundarySpec build_moisture_boundary(const DimensionlessModel& model,
                                          const BoundaryDriver& left,
                                          const BoundaryDriver& right, double t_star) {
  const double v_inf_l = left.v_inf(t_star);
  const double v_inf_r = right.v_inf(t_star);
  const double g_l = left.g_inf(t_star);
  const double g_r = right.g_inf(t_star);
  const bool dir_l = left.mode == BcMode::Dirichlet;
  const bool dir_r = right.mode == BcMode::Dirichlet;
  const double bi_l = model.left.Bi_M;
  const double bi_r = model.right.Bi_M;

  bvp::BoundarySpec bc;
  bc.residual = [&model, v_inf_l, v_inf_r, g_l, g_r, dir_l, dir_r, bi_l, bi_r](
                    std::span<const double> yl, std::span<const double> yr,
                    std::span<double> res) {
    if (dir_l) {
      res[0] = yl[0] - v_inf_l;
    } else {
      const double kM = eval_coefficients(model, yl[0], 0.0).kM;
      res[0] = kM * yl[1] - bi_l * yl[0] + bi_l * v_inf_l + g_l;
    }
    if (dir_r) {
      res[1] = yr[0] - v_inf_r;
    } else {
      const double kM = eval_coefficients(model, yr[0], 1.0).kM;
      res[1] = kM * yr[1] + bi_r * yr[0] - bi_r * v_inf_r - g_r;
    }
  };
  return bc;
}

bvp::BoundarySpec build_heat_boundary(const DimensionlessModel& model,
                                      const BoundaryDriver& left, const BoundaryDriver& right,
                                      double t_star,
                                      std::shared_ptr<const bvp::CollocationSolution> frozen_v) {
  const double u_inf_l = left.u_inf(t_star);
  const double u_inf_r = right.u_inf(t_star);
  const bool dir_l = left.mode == BcMode::Dirichlet;
  const bool dir_r = right.mode == BcMode::Dirichlet;

  // Robin residuals need wall values of the fresh moisture field.
  double kT_l = 0.0, kTM_l = 0.0, theta_l = 0.0, dv_term_l = 0.0;
  double kT_r = 0.0, kTM_r = 0.0, theta_r = 0.0, dv_term_r = 0.0;
  if (!dir_l || !dir_r) {
    if (!frozen_v) {
      throw MissingMoistureSolution(
          "heat boundary residuals need the moisture solution of the same layer");
    }
    const double a = frozen_v->mesh().a();
    const double b = frozen_v->mesh().b();
    const double v_l = frozen_v->value_at(a, 0);
    const double v_r = frozen_v->value_at(b, 0);
    theta_l = frozen_v->value_at(a, 1);
    theta_r = frozen_v->value_at(b, 1);
    const CoefficientSet cl = eval_coefficients(model, v_l, 0.0);
    const CoefficientSet cr = eval_coefficients(model, v_r, 1.0);
    kT_l = cl.kT;
    kTM_l = cl.kTM;
    kT_r = cr.kT;
    kTM_r = cr.kTM;
    dv_term_l = model.left.Bi_TM * model.gamma2 * (v_l - left.v_inf(t_star));
    dv_term_r = model.right.Bi_TM * model.gamma2 * (v_r - right.v_inf(t_star));
  }
  const double q_l = left.q_inf(t_star);
  const double q_r = right.q_inf(t_star);
  const double bi_l = model.left.Bi_T;
  const double bi_r = model.right.Bi_T;
  const double FoT = model.Fo_T;
  const double g2 = model.gamma2;

  bvp::BoundarySpec bc;
  bc.residual = [=](std::span<const double> yl, std::span<const double> yr,
                    std::span<double> res) {
    if (dir_l) {
      res[0] = yl[0] - u_inf_l;
    } else {
      res[0] = FoT * (kT_l * yl[1] + kTM_l * g2 * theta_l) - bi_l * (yl[0] - u_inf_l) -
               dv_term_l + q_l;
    }
    if (dir_r) {
      res[1] = yr[0] - u_inf_r;
    } else {
      res[1] = FoT * (kT_r * yr[1] + kTM_r * g2 * theta_r) + bi_r * (yr[0] - u_inf_r) +
               dv_term_r - q_r;
    }
  };
  return bc;
}

std::pair<bvp::BoundarySpec, bvp::BoundarySpec> build_boundary_residuals(
    const DimensionlessModel& model, const BoundaryDriver& left, const BoundaryDriver& right,
    double t_star, std::shared_ptr<const bvp::CollocationSolution> frozen_v) {
  return {build_moisture_boundary(model, left, right, t_star),
          build_heat_boundary(model, left, right, t_star, frozen_v)};
}

}  // namespace mohl::physics
