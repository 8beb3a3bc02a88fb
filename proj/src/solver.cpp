#include "mohl/bvp/solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mohl/errors.hpp"

namespace mohl::bvp {

namespace {

constexpr double kSqrtEps = 1.4901161193847656e-08;  // sqrt(machine epsilon)

// 5-point Lobatto rule on [0, 1]; the interior points catch the residual the
// collocation conditions cannot see.
constexpr double kLob2 = 0.17267316464601146;  // (1 - sqrt(3/7)) / 2
constexpr double kLob4 = 0.82732683535398854;
constexpr double kLobNodes[5] = {0.0, kLob2, 0.5, kLob4, 1.0};
constexpr double kLobWeights[5] = {0.05, 49.0 / 180.0, 16.0 / 45.0, 49.0 / 180.0, 0.05};

using SpMat = Eigen::SparseMatrix<double>;

void eval_rhs(const OdeSystem& sys, double x, const Eigen::VectorXd& y, Eigen::VectorXd& f) {
  sys.rhs(x, {y.data(), static_cast<std::size_t>(y.size())},
          {f.data(), static_cast<std::size_t>(f.size())});
}

// df/dy, analytic when supplied, otherwise central differences with
// step sqrt(eps)*max(|y_c|, 1).
void eval_jacobian(const OdeSystem& sys, double x, const Eigen::VectorXd& y,
                   Eigen::MatrixXd& jac) {
  const int d = sys.dimension;
  if (sys.jacobian) {
    sys.jacobian(x, {y.data(), static_cast<std::size_t>(y.size())},
                 {jac.data(), static_cast<std::size_t>(jac.size())});
    return;
  }
  Eigen::VectorXd yp = y, ym = y, fp(d), fm(d);
  for (int c = 0; c < d; ++c) {
    const double step = kSqrtEps * std::max(std::abs(y(c)), 1.0);
    yp(c) = y(c) + step;
    ym(c) = y(c) - step;
    eval_rhs(sys, x, yp, fp);
    eval_rhs(sys, x, ym, fm);
    jac.col(c) = (fp - fm) / (2.0 * step);
    yp(c) = y(c);
    ym(c) = y(c);
  }
}

void eval_bc(const BoundarySpec& bc, const Eigen::VectorXd& yl, const Eigen::VectorXd& yr,
             Eigen::VectorXd& res) {
  bc.residual({yl.data(), static_cast<std::size_t>(yl.size())},
              {yr.data(), static_cast<std::size_t>(yr.size())},
              {res.data(), static_cast<std::size_t>(res.size())});
}

struct NewtonWorkspace {
  Eigen::MatrixXd f_nodes;  // d x N
  Eigen::VectorXd ymid, fmid, tmp;
};

// Collocation residual in nodal unknowns: boundary rows first, then one
// Simpson (condensed three-point Lobatto IIIA) block per interval.
void collocation_residual(const OdeSystem& sys, const BoundarySpec& bc, const Mesh& mesh,
                          const Eigen::MatrixXd& Y, NewtonWorkspace& ws, Eigen::VectorXd& F) {
  const int d = sys.dimension;
  const int n = mesh.node_count();
  ws.f_nodes.resize(d, n);
  ws.ymid.resize(d);
  ws.fmid.resize(d);
  Eigen::VectorXd yj(d), fj(d);
  for (int j = 0; j < n; ++j) {
    yj = Y.col(j);
    eval_rhs(sys, mesh.nodes()[j], yj, fj);
    ws.f_nodes.col(j) = fj;
  }
  Eigen::VectorXd bres(d);
  Eigen::VectorXd yl = Y.col(0), yr = Y.col(n - 1);
  eval_bc(bc, yl, yr, bres);
  F.segment(0, d) = bres;
  for (int i = 0; i < n - 1; ++i) {
    const double h = mesh.spacing(i);
    const double xm = mesh.nodes()[i] + 0.5 * h;
    ws.ymid = 0.5 * (Y.col(i) + Y.col(i + 1)) + (h / 8.0) * (ws.f_nodes.col(i) - ws.f_nodes.col(i + 1));
    eval_rhs(sys, xm, ws.ymid, ws.fmid);
    F.segment(d * (i + 1), d) = Y.col(i + 1) - Y.col(i) -
                                (h / 6.0) * (ws.f_nodes.col(i) + 4.0 * ws.fmid + ws.f_nodes.col(i + 1));
  }
}

// Block-bidiagonal Jacobian with the boundary rows coupling first and last
// nodes.
void collocation_jacobian(const OdeSystem& sys, const BoundarySpec& bc, const Mesh& mesh,
                          const Eigen::MatrixXd& Y, const NewtonWorkspace& ws, SpMat& J) {
  const int d = sys.dimension;
  const int n = mesh.node_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(d) * d * (2 * n + 2));

  // boundary rows: finite differences of psi in y_left and y_right
  Eigen::VectorXd yl = Y.col(0), yr = Y.col(n - 1);
  Eigen::VectorXd rp(d), rm(d);
  for (int c = 0; c < d; ++c) {
    const double step = kSqrtEps * std::max(std::abs(yl(c)), 1.0);
    Eigen::VectorXd ylp = yl, ylm = yl;
    ylp(c) += step;
    ylm(c) -= step;
    eval_bc(bc, ylp, yr, rp);
    eval_bc(bc, ylm, yr, rm);
    for (int r = 0; r < d; ++r) trip.emplace_back(r, c, (rp(r) - rm(r)) / (2.0 * step));
  }
  for (int c = 0; c < d; ++c) {
    const double step = kSqrtEps * std::max(std::abs(yr(c)), 1.0);
    Eigen::VectorXd yrp = yr, yrm = yr;
    yrp(c) += step;
    yrm(c) -= step;
    eval_bc(bc, yl, yrp, rp);
    eval_bc(bc, yl, yrm, rm);
    for (int r = 0; r < d; ++r)
      trip.emplace_back(r, d * (n - 1) + c, (rp(r) - rm(r)) / (2.0 * step));
  }

  Eigen::MatrixXd Ji(d, d), Jip(d, d), Jm(d, d), A(d, d), B(d, d);
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd yj(d);
  yj = Y.col(0);
  eval_jacobian(sys, mesh.nodes()[0], yj, Jip);
  for (int i = 0; i < n - 1; ++i) {
    Ji = Jip;
    yj = Y.col(i + 1);
    eval_jacobian(sys, mesh.nodes()[i + 1], yj, Jip);
    const double h = mesh.spacing(i);
    const double xm = mesh.nodes()[i] + 0.5 * h;
    Eigen::VectorXd ymid = 0.5 * (Y.col(i) + Y.col(i + 1)) +
                           (h / 8.0) * (ws.f_nodes.col(i) - ws.f_nodes.col(i + 1));
    eval_jacobian(sys, xm, ymid, Jm);
    A = -I - (h / 6.0) * Ji - (2.0 * h / 3.0) * Jm * (0.5 * I + (h / 8.0) * Ji);
    B = I - (h / 6.0) * Jip - (2.0 * h / 3.0) * Jm * (0.5 * I - (h / 8.0) * Jip);
    const int row0 = d * (i + 1);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        trip.emplace_back(row0 + r, d * i + c, A(r, c));
        trip.emplace_back(row0 + r, d * (i + 1) + c, B(r, c));
      }
    }
  }
  J.resize(d * n, d * n);
  J.setFromTriplets(trip.begin(), trip.end());
}

struct NewtonOutcome {
  bool converged = false;
  bool singular = false;
  int iterations = 0;
};

// Damped Newton with a monotone residual-norm test. Y is updated in place.
NewtonOutcome newton_solve(const OdeSystem& sys, const BoundarySpec& bc, const Mesh& mesh,
                           Eigen::MatrixXd& Y, const SolverOptions& opt) {
  const int d = sys.dimension;
  const int n = mesh.node_count();
  const int m = d * n;
  NewtonWorkspace ws;
  Eigen::VectorXd F(m), Ft(m), dz(m);
  Eigen::MatrixXd Yt(d, n);
  SpMat J;
  Eigen::SparseLU<SpMat> lu;
  NewtonOutcome out;

  collocation_residual(sys, bc, mesh, Y, ws, F);
  double normF = F.lpNorm<Eigen::Infinity>();
  const double scale = solution_scale(Y);
  const double corr_tol =
      std::max(0.01 * (opt.rel_tol * scale + opt.abs_tol), 1e-14 * scale);

  for (int iter = 0; iter < opt.newton_max_iter; ++iter) {
    if (!std::isfinite(normF)) return out;
    if (normF <= 1e-14 * scale) {
      out.converged = true;
      return out;
    }
    collocation_jacobian(sys, bc, mesh, Y, ws, J);
    lu.compute(J);
    if (lu.info() != Eigen::Success) {
      out.singular = true;
      return out;
    }
    dz = lu.solve(-F);
    if (!dz.allFinite()) {
      out.singular = true;
      return out;
    }
    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= 1e-3) {
      Yt = Y + lambda * Eigen::Map<const Eigen::MatrixXd>(dz.data(), d, n);
      collocation_residual(sys, bc, mesh, Yt, ws, Ft);
      const double normFt = Ft.lpNorm<Eigen::Infinity>();
      if (std::isfinite(normFt) && normFt <= (1.0 - 1e-4 * lambda) * normF) {
        accepted = true;
        break;
      }
      lambda *= opt.newton_damping;
    }
    ++out.iterations;
    if (!accepted) return out;  // damping collapsed
    Y = Yt;
    F = Ft;
    normF = F.lpNorm<Eigen::Infinity>();
    if (lambda == 1.0 && dz.lpNorm<Eigen::Infinity>() <= corr_tol) {
      out.converged = true;
      return out;
    }
  }
  // Accept a stagnated iterate only if the algebraic residual is tiny.
  out.converged = normF <= 1e-12 * std::max(scale, 1.0);
  return out;
}

Eigen::MatrixXd slopes_from_rhs(const OdeSystem& sys, const Mesh& mesh,
                                const Eigen::MatrixXd& values) {
  const int d = sys.dimension;
  Eigen::MatrixXd slopes(d, mesh.node_count());
  Eigen::VectorXd y(d), f(d);
  for (int j = 0; j < mesh.node_count(); ++j) {
    y = values.col(j);
    eval_rhs(sys, mesh.nodes()[j], y, f);
    slopes.col(j) = f;
  }
  return slopes;
}

Eigen::MatrixXd interpolate_onto(const CollocationSolution& sol, const Mesh& mesh) {
  const int d = sol.dimension();
  Eigen::MatrixXd values(d, mesh.node_count());
  Eigen::VectorXd v(d), dv(d);
  for (int j = 0; j < mesh.node_count(); ++j) {
    sol.evaluate(mesh.nodes()[j], {v.data(), static_cast<std::size_t>(d)},
                 {dv.data(), static_cast<std::size_t>(d)});
    values.col(j) = v;
  }
  return values;
}

Mesh bisect_all(const Mesh& mesh, int max_nodes) {
  std::vector<double> nodes;
  nodes.reserve(2 * mesh.nodes().size());
  for (int i = 0; i < mesh.interval_count(); ++i) {
    nodes.push_back(mesh.nodes()[i]);
    nodes.push_back(0.5 * (mesh.nodes()[i] + mesh.nodes()[i + 1]));
  }
  nodes.push_back(mesh.b());
  if (static_cast<int>(nodes.size()) > max_nodes) {
    throw MeshOverflow("mesh refinement exceeds max_nodes");
  }
  return Mesh(std::move(nodes));
}

Mesh mesh_with_pinned(const Mesh& mesh, std::span<const double> pinned) {
  std::vector<double> nodes = mesh.nodes();
  bool changed = false;
  for (double p : pinned) {
    if (p <= mesh.a() || p >= mesh.b()) continue;
    if (std::find(nodes.begin(), nodes.end(), p) == nodes.end()) {
      nodes.push_back(p);
      changed = true;
    }
  }
  if (!changed) return mesh;
  std::sort(nodes.begin(), nodes.end());
  return Mesh(std::move(nodes));
}

}  // namespace

double solution_scale(const Eigen::MatrixXd& values) {
  double s = 1.0;
  for (int c = 0; c < values.rows(); ++c) {
    s = std::max(s, values.row(c).cwiseAbs().maxCoeff());
  }
  return s;
}

CollocationSolution nodal_guess(const OdeSystem& system, const Mesh& mesh,
                                const Eigen::MatrixXd& values) {
  if (values.rows() != system.dimension || values.cols() != mesh.node_count()) {
    throw ConfigError("guess shape does not match mesh/system");
  }
  return CollocationSolution(mesh, values, slopes_from_rhs(system, mesh, values));
}

ResidualEstimate estimate_residuals(const CollocationSolution& sol, const OdeSystem& system,
                                    const BoundarySpec& bc) {
  const int d = sol.dimension();
  const Mesh& mesh = sol.mesh();
  ResidualEstimate est;
  est.interval.resize(mesh.interval_count());
  Eigen::VectorXd v(d), dv(d), f(d);
  for (int i = 0; i < mesh.interval_count(); ++i) {
    const double h = mesh.spacing(i);
    double acc = 0.0;
    for (int q = 0; q < 5; ++q) {
      const double x = mesh.nodes()[i] + kLobNodes[q] * h;
      sol.evaluate_side(x, q == 0 ? Side::Right : Side::Left,
                        {v.data(), static_cast<std::size_t>(d)},
                        {dv.data(), static_cast<std::size_t>(d)});
      eval_rhs(system, x, v, f);
      acc += kLobWeights[q] * (dv - f).squaredNorm();
    }
    est.interval[i] = std::sqrt(h * acc);
  }
  Eigen::VectorXd bres(d);
  Eigen::VectorXd yl = sol.values().col(0), yr = sol.values().col(mesh.node_count() - 1);
  eval_bc(bc, yl, yr, bres);
  est.boundary = bres.norm();
  return est;
}

Mesh adapt_mesh(const Mesh& mesh, const std::vector<double>& residuals,
                const SolverOptions& options, std::span<const double> pinned, double scale) {
  if (static_cast<int>(residuals.size()) != mesh.interval_count()) {
    throw ConfigError("residual count does not match interval count");
  }
  const double thr = options.rel_tol * scale + options.abs_tol;
  auto is_pinned = [&](double x) {
    return std::find(pinned.begin(), pinned.end(), x) != pinned.end();
  };
  std::vector<double> nodes;
  nodes.reserve(mesh.nodes().size() + residuals.size());
  nodes.push_back(mesh.a());
  int i = 0;
  const int m = mesh.interval_count();
  while (i < m) {
    // Merge a pair of adjacent intervals when both sit far below tolerance;
    // the merged interval's residual grows by roughly 2^4.5 and stays safe.
    if (i + 1 < m && residuals[i] < thr / 100.0 && residuals[i + 1] < thr / 100.0 &&
        !is_pinned(mesh.nodes()[i + 1])) {
      nodes.push_back(mesh.nodes()[i + 2]);
      i += 2;
      continue;
    }
    if (residuals[i] > thr) {
      nodes.push_back(0.5 * (mesh.nodes()[i] + mesh.nodes()[i + 1]));
    }
    nodes.push_back(mesh.nodes()[i + 1]);
    ++i;
  }
  if (static_cast<int>(nodes.size()) > options.max_nodes) {
    throw MeshOverflow("mesh adaptation exceeds max_nodes");
  }
  return Mesh(std::move(nodes));
}

SolveResult solve_bvp(const OdeSystem& system, const BoundarySpec& bc,
                      const CollocationSolution& guess, const SolverOptions& options,
                      std::span<const double> pinned) {
  if (guess.dimension() != system.dimension) {
    throw ConfigError("guess dimension does not match system");
  }
  if (guess.mesh().node_count() > options.max_nodes) {
    throw MeshOverflow("initial mesh exceeds max_nodes");
  }

  Mesh mesh = mesh_with_pinned(guess.mesh(), pinned);
  Eigen::MatrixXd values =
      mesh == guess.mesh() ? guess.values() : interpolate_onto(guess, mesh);

  SolveStats stats;
  int newton_failures = 0;
  bool last_failure_singular = false;
  constexpr int kMaxPasses = 64;

  auto make_result = [&](const CollocationSolution& sol, const ResidualEstimate& res,
                         double thr) {
    SolveResult out{sol, stats};
    out.stats.final_nodes = sol.mesh().node_count();
    out.stats.max_interval_residual =
        res.interval.empty() ? 0.0
                             : *std::max_element(res.interval.begin(), res.interval.end());
    out.stats.boundary_residual = res.boundary;
    out.stats.threshold = thr;
    return out;
  };

  for (int pass = 0; pass < kMaxPasses; ++pass) {
    ++stats.mesh_passes;
    NewtonOutcome nw = newton_solve(system, bc, mesh, values, options);
    stats.newton_iterations += nw.iterations;
    if (!nw.converged) {
      last_failure_singular = nw.singular;
      if (++newton_failures > 3) break;
      // retry on a globally bisected mesh from the best available iterate
      CollocationSolution cur(mesh, values, slopes_from_rhs(system, mesh, values));
      mesh = mesh_with_pinned(bisect_all(mesh, options.max_nodes), pinned);
      values = interpolate_onto(cur, mesh);
      continue;
    }

    CollocationSolution sol(mesh, values, slopes_from_rhs(system, mesh, values));
    ResidualEstimate res = estimate_residuals(sol, system, bc);
    const double scale = solution_scale(values);
    const double thr = options.rel_tol * scale + options.abs_tol;
    const bool pass_tol =
        res.boundary <= thr &&
        std::all_of(res.interval.begin(), res.interval.end(),
                    [&](double r) { return r <= thr; });

    if (!options.adaptation) return make_result(sol, res, thr);

    if (pass_tol) {
      Mesh coarser = adapt_mesh(mesh, res.interval, options, pinned, scale);
      if (coarser.node_count() >= mesh.node_count()) return make_result(sol, res, thr);
      // verify the coarsened mesh still meets tolerance; keep the fine
      // solution otherwise
      Eigen::MatrixXd cvalues = interpolate_onto(sol, coarser);
      NewtonOutcome cnw = newton_solve(system, bc, coarser, cvalues, options);
      stats.newton_iterations += cnw.iterations;
      if (cnw.converged) {
        CollocationSolution csol(coarser, cvalues, slopes_from_rhs(system, coarser, cvalues));
        ResidualEstimate cres = estimate_residuals(csol, system, bc);
        const double cscale = solution_scale(cvalues);
        const double cthr = options.rel_tol * cscale + options.abs_tol;
        const bool cok = cres.boundary <= cthr &&
                         std::all_of(cres.interval.begin(), cres.interval.end(),
                                     [&](double r) { return r <= cthr; });
        if (cok) return make_result(csol, cres, cthr);
      }
      return make_result(sol, res, thr);
    }

    Mesh refined = adapt_mesh(mesh, res.interval, options, pinned, scale);
    if (refined.node_count() == mesh.node_count()) {
      // nothing above tolerance was split (merges only); accept next pass
      mesh = refined;
      values = interpolate_onto(sol, mesh);
      continue;
    }
    mesh = refined;
    values = interpolate_onto(sol, mesh);
  }

  if (last_failure_singular) {
    throw SingularJacobian("damped Newton cannot proceed (singular or non-finite step)");
  }
  throw NonConvergence("collocation solve did not converge within refinement attempts");
}

}  // namespace mohl::bvp
