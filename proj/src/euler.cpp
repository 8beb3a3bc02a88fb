#include "mohl/reference/euler.hpp"

#include <chrono>
#include <cmath>

#include "mohl/errors.hpp"
#include "mohl/reference/banded.hpp"

namespace mohl::reference {

using physics::BcMode;
using physics::BoundaryDriver;
using physics::CoefficientSet;
using physics::DimensionlessModel;
using physics::SpatialProfile;

GridConfig GridConfig::build(const DimensionlessModel& model, double dx_target, double dt_star) {
  if (!(dx_target > 0.0) || !(dt_star > 0.0)) throw ConfigError("grid needs positive dx and dt");
  GridConfig g;
  g.dt_star = dt_star;
  g.dx_star = 1.0;
  g.nodes.push_back(0.0);
  for (const auto& layer : model.layers) {
    const double width = layer.x_end - layer.x_begin;
    const int n = std::max(2, static_cast<int>(std::llround(width / dx_target)));
    for (int k = 1; k <= n; ++k) g.nodes.push_back(layer.x_begin + width * k / n);
    g.dx_star = std::min(g.dx_star, width / n);
  }
  g.nodes.back() = 1.0;
  return g;
}

namespace {

struct Workspace {
  std::vector<double> cM, cT, cTM, kM, kT, kTM;  // nodal coefficients
  std::vector<int> layer_of;                     // layer index per node
};

void nodal_coefficients(const DimensionlessModel& model, const std::vector<double>& x,
                        const Eigen::VectorXd& v, Workspace& ws) {
  const int n = static_cast<int>(x.size());
  ws.cM.resize(n);
  ws.cT.resize(n);
  ws.cTM.resize(n);
  ws.kM.resize(n);
  ws.kT.resize(n);
  ws.kTM.resize(n);
  for (int j = 0; j < n; ++j) {
    const CoefficientSet c = physics::eval_coefficients(model, v(j), x[j]);
    ws.cM[j] = c.cM;
    ws.cT[j] = c.cT;
    ws.cTM[j] = c.cTM;
    ws.kM[j] = c.kM;
    ws.kT[j] = c.kT;
    ws.kTM[j] = c.kTM;
  }
}

void layer_index(const DimensionlessModel& model, const std::vector<double>& x,
                 std::vector<int>& out) {
  out.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& lay = model.layer_at(x[j]);
    out[j] = static_cast<int>(&lay - model.layers.data());
  }
}

// Half-node transfer coefficient: arithmetic mean inside a layer, harmonic
// across the interface-straddling pair.
double half_node(const std::vector<double>& k, const std::vector<int>& layer, int j) {
  if (layer[j] != layer[j + 1]) {
    return 2.0 * k[j] * k[j + 1] / (k[j] + k[j + 1]);
  }
  return 0.5 * (k[j] + k[j + 1]);
}

// div(k grad(f)) at interior node j for variable spacing
double flux_divergence(const std::vector<double>& x, const std::vector<double>& k,
                       const std::vector<int>& layer, const Eigen::VectorXd& f, int j) {
  const double hl = x[j] - x[j - 1];
  const double hr = x[j + 1] - x[j];
  const double kl = half_node(k, layer, j - 1);
  const double kr = half_node(k, layer, j);
  return (kr * (f(j + 1) - f(j)) / hr - kl * (f(j) - f(j - 1)) / hl) / (0.5 * (hl + hr));
}

struct SnapshotSink {
  ReferenceSeries* series;
  long stride;
  void maybe_store(long step, double t, const Eigen::VectorXd& v, const Eigen::VectorXd& u) {
    if (step % stride == 0) {
      series->times.push_back(t);
      series->v.push_back(v);
      series->u.push_back(u);
    }
  }
};

ReferenceSeries init_series(const GridConfig& grid, const SpatialProfile& v0,
                            const SpatialProfile& u0, const EulerOptions& opt,
                            Eigen::VectorXd& v, Eigen::VectorXd& u) {
  ReferenceSeries s;
  s.grid = grid.nodes;
  s.picard_tol = opt.picard_tol;
  const int n = grid.node_count();
  v.resize(n);
  u.resize(n);
  for (int j = 0; j < n; ++j) {
    v(j) = v0.value(grid.nodes[j]);
    u(j) = u0.value(grid.nodes[j]);
  }
  s.times.push_back(0.0);
  s.v.push_back(v);
  s.u.push_back(u);
  return s;
}

}  // namespace

double explicit_stability_bound(const DimensionlessModel& model, double dx_min, double v_min,
                                double v_max) {
  double worst = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 400;
  for (const auto& layer : model.layers) {
    for (int i = 0; i <= kSamples; ++i) {
      const double v = v_min + (v_max - v_min) * i / kSamples;
      const double m = layer.closure.cM.value(v) / (2.0 * model.Fo_M * layer.closure.kM.value(v));
      const double t = layer.closure.cT.value(v) / (2.0 * model.Fo_T * layer.closure.kT.value(v));
      worst = std::min({worst, m, t});
    }
  }
  return dx_min * dx_min * worst;
}

ReferenceSeries euler_implicit_run(const DimensionlessModel& model, const BoundaryDriver& left,
                                   const BoundaryDriver& right, const SpatialProfile& v_initial,
                                   const SpatialProfile& u_initial, double tau_star,
                                   const GridConfig& grid, const EulerOptions& options) {
  const int n = grid.node_count();
  const double dt = grid.dt_star;
  const std::vector<double>& x = grid.nodes;
  Eigen::VectorXd v, u;
  ReferenceSeries series = init_series(grid, v_initial, u_initial, options, v, u);
  SnapshotSink sink{&series, std::max<long>(1, std::llround(options.snapshot_dt / dt))};

  Workspace ws;
  layer_index(model, x, ws.layer_of);
  BandedMatrix A(n, 2, 2);
  std::vector<double> rhs(n);
  Eigen::VectorXd vn = v, un = u, vm(n);
  const long steps = std::llround(tau_star / dt);
  const double hl_edge = x[1] - x[0];
  const double hr_edge = x[n - 1] - x[n - 2];

  const auto t0 = std::chrono::steady_clock::now();
  for (long step = 1; step <= steps; ++step) {
    const double t = step * dt;
    vn = v;
    un = u;
    vm = v;

    // Picard on the moisture equation: freeze coefficients at the latest
    // iterate, solve the linear system, repeat.
    int it = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (; it < options.picard_max; ++it) {
      nodal_coefficients(model, x, vm, ws);
      A.clear();
      for (int j = 1; j + 1 < n; ++j) {
        const double hl = x[j] - x[j - 1];
        const double hr = x[j + 1] - x[j];
        const double hm = 0.5 * (hl + hr);
        const double kl = half_node(ws.kM, ws.layer_of, j - 1);
        const double kr = half_node(ws.kM, ws.layer_of, j);
        A.at(j, j - 1) = -model.Fo_M * kl / (hl * hm);
        A.at(j, j + 1) = -model.Fo_M * kr / (hr * hm);
        A.at(j, j) = ws.cM[j] / dt + model.Fo_M * (kr / hr + kl / hl) / hm;
        rhs[j] = ws.cM[j] * vn(j) / dt;
      }
      if (left.mode == BcMode::Dirichlet) {
        A.at(0, 0) = 1.0;
        A.at(0, 1) = 0.0;
        A.at(0, 2) = 0.0;
        rhs[0] = left.v_inf(t);
      } else {
        const double kM = ws.kM[0];
        A.at(0, 0) = -3.0 * kM / (2.0 * hl_edge) - model.left.Bi_M;
        A.at(0, 1) = 4.0 * kM / (2.0 * hl_edge);
        A.at(0, 2) = -kM / (2.0 * hl_edge);
        rhs[0] = -model.left.Bi_M * left.v_inf(t) - left.g_inf(t);
      }
      if (right.mode == BcMode::Dirichlet) {
        A.at(n - 1, n - 1) = 1.0;
        A.at(n - 1, n - 2) = 0.0;
        A.at(n - 1, n - 3) = 0.0;
        rhs[n - 1] = right.v_inf(t);
      } else {
        const double kM = ws.kM[n - 1];
        A.at(n - 1, n - 1) = 3.0 * kM / (2.0 * hr_edge) + model.right.Bi_M;
        A.at(n - 1, n - 2) = -4.0 * kM / (2.0 * hr_edge);
        A.at(n - 1, n - 3) = kM / (2.0 * hr_edge);
        rhs[n - 1] = model.right.Bi_M * right.v_inf(t) + right.g_inf(t);
      }
      A.solve(rhs);
      gap = 0.0;
      for (int j = 0; j < n; ++j) gap = std::max(gap, std::abs(rhs[j] - vm(j)));
      for (int j = 0; j < n; ++j) vm(j) = rhs[j];
      ++series.picard_iterations;
      if (gap <= options.picard_tol) break;
    }
    if (gap > options.picard_tol) {
      series.error = "Picard iteration stalled (layer " + std::to_string(step) +
                     ", gap " + std::to_string(gap) + ")";
      series.failed_layer = static_cast<int>(step);
      break;
    }
    v = vm;

    // Heat step: all coefficients depend on v only, so one linear solve at
    // the fresh moisture field suffices.
    nodal_coefficients(model, x, v, ws);
    A.clear();
    for (int j = 1; j + 1 < n; ++j) {
      const double hl = x[j] - x[j - 1];
      const double hr = x[j + 1] - x[j];
      const double hm = 0.5 * (hl + hr);
      const double kl = half_node(ws.kT, ws.layer_of, j - 1);
      const double kr = half_node(ws.kT, ws.layer_of, j);
      A.at(j, j - 1) = -model.Fo_T * kl / (hl * hm);
      A.at(j, j + 1) = -model.Fo_T * kr / (hr * hm);
      A.at(j, j) = ws.cT[j] / dt + model.Fo_T * (kr / hr + kl / hl) / hm;
      rhs[j] = ws.cT[j] * un(j) / dt - model.gamma1 * ws.cTM[j] * (v(j) - vn(j)) / dt +
               model.Fo_T * model.gamma2 * flux_divergence(x, ws.kTM, ws.layer_of, v, j);
    }
    const double thv_l = (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * hl_edge);
    const double thv_r = (3.0 * v(n - 1) - 4.0 * v(n - 2) + v(n - 3)) / (2.0 * hr_edge);
    if (left.mode == BcMode::Dirichlet) {
      A.at(0, 0) = 1.0;
      A.at(0, 1) = 0.0;
      A.at(0, 2) = 0.0;
      rhs[0] = left.u_inf(t);
    } else {
      const double c = model.Fo_T * ws.kT[0] / (2.0 * hl_edge);
      A.at(0, 0) = -3.0 * c - model.left.Bi_T;
      A.at(0, 1) = 4.0 * c;
      A.at(0, 2) = -c;
      rhs[0] = -model.Fo_T * model.gamma2 * ws.kTM[0] * thv_l - model.left.Bi_T * left.u_inf(t) +
               model.left.Bi_TM * model.gamma2 * (v(0) - left.v_inf(t)) - left.q_inf(t);
    }
    if (right.mode == BcMode::Dirichlet) {
      A.at(n - 1, n - 1) = 1.0;
      A.at(n - 1, n - 2) = 0.0;
      A.at(n - 1, n - 3) = 0.0;
      rhs[n - 1] = right.u_inf(t);
    } else {
      const double c = model.Fo_T * ws.kT[n - 1] / (2.0 * hr_edge);
      A.at(n - 1, n - 1) = 3.0 * c + model.right.Bi_T;
      A.at(n - 1, n - 2) = -4.0 * c;
      A.at(n - 1, n - 3) = c;
      rhs[n - 1] = -model.Fo_T * model.gamma2 * ws.kTM[n - 1] * thv_r +
                   model.right.Bi_T * right.u_inf(t) -
                   model.right.Bi_TM * model.gamma2 * (v(n - 1) - right.v_inf(t)) +
                   right.q_inf(t);
    }
    A.solve(rhs);
    for (int j = 0; j < n; ++j) u(j) = rhs[j];

    ++series.total_steps;
    sink.maybe_store(step, t, v, u);
  }
  series.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return series;
}

ReferenceSeries euler_explicit_run(const DimensionlessModel& model, const BoundaryDriver& left,
                                   const BoundaryDriver& right, const SpatialProfile& v_initial,
                                   const SpatialProfile& u_initial, double tau_star,
                                   const GridConfig& grid, const EulerOptions& options) {
  const double bound =
      explicit_stability_bound(model, grid.dx_star, options.v_range_min, options.v_range_max);
  if (grid.dt_star > bound && !options.disable_cfl_guard) {
    throw CflViolation("explicit step " + std::to_string(grid.dt_star) +
                           " above the stability bound " + std::to_string(bound),
                       bound);
  }

  const int n = grid.node_count();
  const double dt = grid.dt_star;
  const std::vector<double>& x = grid.nodes;
  Eigen::VectorXd v, u;
  ReferenceSeries series = init_series(grid, v_initial, u_initial, options, v, u);
  SnapshotSink sink{&series, std::max<long>(1, std::llround(options.snapshot_dt / dt))};

  Workspace ws;
  layer_index(model, x, ws.layer_of);
  Eigen::VectorXd vn = v, un = u;
  const long steps = std::llround(tau_star / dt);
  const double hl_edge = x[1] - x[0];
  const double hr_edge = x[n - 1] - x[n - 2];

  const auto t0 = std::chrono::steady_clock::now();
  for (long step = 1; step <= steps; ++step) {
    const double t = step * dt;
    vn = v;
    un = u;
    nodal_coefficients(model, x, vn, ws);
    for (int j = 1; j + 1 < n; ++j) {
      v(j) = vn(j) + dt * model.Fo_M * flux_divergence(x, ws.kM, ws.layer_of, vn, j) / ws.cM[j];
    }
    if (left.mode == BcMode::Dirichlet) {
      v(0) = left.v_inf(t);
    } else {
      const double kM = ws.kM[0];
      v(0) = (kM * (4.0 * v(1) - v(2)) / (2.0 * hl_edge) + model.left.Bi_M * left.v_inf(t) +
              left.g_inf(t)) /
             (3.0 * kM / (2.0 * hl_edge) + model.left.Bi_M);
    }
    if (right.mode == BcMode::Dirichlet) {
      v(n - 1) = right.v_inf(t);
    } else {
      const double kM = ws.kM[n - 1];
      v(n - 1) = (kM * (4.0 * v(n - 2) - v(n - 3)) / (2.0 * hr_edge) +
                  model.right.Bi_M * right.v_inf(t) + right.g_inf(t)) /
                 (3.0 * kM / (2.0 * hr_edge) + model.right.Bi_M);
    }

    for (int j = 1; j + 1 < n; ++j) {
      const double source = model.Fo_T * flux_divergence(x, ws.kT, ws.layer_of, un, j) +
                            model.Fo_T * model.gamma2 *
                                flux_divergence(x, ws.kTM, ws.layer_of, vn, j) -
                            model.gamma1 * ws.cTM[j] * (v(j) - vn(j)) / dt;
      u(j) = un(j) + dt * source / ws.cT[j];
    }
    const double thv_l = (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * hl_edge);
    const double thv_r = (3.0 * v(n - 1) - 4.0 * v(n - 2) + v(n - 3)) / (2.0 * hr_edge);
    if (left.mode == BcMode::Dirichlet) {
      u(0) = left.u_inf(t);
    } else {
      const double c = model.Fo_T * ws.kT[0] / (2.0 * hl_edge);
      u(0) = (c * (4.0 * u(1) - u(2)) + model.Fo_T * model.gamma2 * ws.kTM[0] * thv_l +
              model.left.Bi_T * left.u_inf(t) -
              model.left.Bi_TM * model.gamma2 * (v(0) - left.v_inf(t)) + left.q_inf(t)) /
             (3.0 * c + model.left.Bi_T);
    }
    if (right.mode == BcMode::Dirichlet) {
      u(n - 1) = right.u_inf(t);
    } else {
      const double c = model.Fo_T * ws.kT[n - 1] / (2.0 * hr_edge);
      u(n - 1) = (c * (4.0 * u(n - 2) - u(n - 3)) - model.Fo_T * model.gamma2 * ws.kTM[n - 1] * thv_r +
                  model.right.Bi_T * right.u_inf(t) -
                  model.right.Bi_TM * model.gamma2 * (v(n - 1) - right.v_inf(t)) +
                  right.q_inf(t)) /
                 (3.0 * c + model.right.Bi_T);
    }

    ++series.total_steps;
    sink.maybe_store(step, t, v, u);

    if (step % 1000 == 0) {
      const double vmax = v.cwiseAbs().maxCoeff();
      if (!std::isfinite(vmax) || vmax > 1e6) {
        series.error = "explicit run diverged (layer " + std::to_string(step) + ")";
        series.failed_layer = static_cast<int>(step);
        break;
      }
    }
  }
  series.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return series;
}

}  // namespace mohl::reference
