#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mohl/bvp/solver.hpp"
#include "mohl/errors.hpp"

using namespace mohl;
using namespace mohl::bvp;

namespace {

constexpr double kPi = std::numbers::pi;

// u'' = 0 as a first-order system
OdeSystem straight_line_system() {
  OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [](double, std::span<const double> y, std::span<double> f) {
    f[0] = y[1];
    f[1] = 0.0;
  };
  return sys;
}

BoundarySpec dirichlet(double left, double right) {
  BoundarySpec bc;
  bc.residual = [left, right](std::span<const double> yl, std::span<const double> yr,
                              std::span<double> res) {
    res[0] = yl[0] - left;
    res[1] = yr[0] - right;
  };
  return bc;
}

// u'' = -pi^2 sin(pi x), exact solution u = sin(pi x) with u(0) = u(1) = 0
OdeSystem sine_system() {
  OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [](double x, std::span<const double> y, std::span<double> f) {
    f[0] = y[1];
    f[1] = -kPi * kPi * std::sin(kPi * x);
  };
  return sys;
}

CollocationSolution flat_guess(const OdeSystem& sys, const Mesh& mesh, double v0 = 0.0,
                               double v1 = 0.0) {
  Eigen::MatrixXd vals(2, mesh.node_count());
  vals.row(0).setConstant(v0);
  vals.row(1).setConstant(v1);
  return nodal_guess(sys, mesh, vals);
}

}  // namespace

TEST_CASE("linear problem is exact in collocation space") {
  auto sys = straight_line_system();
  auto bc = dirichlet(0.0, 1.0);
  auto guess = flat_guess(sys, Mesh::uniform(0.0, 1.0, 5));
  SolverOptions opt;
  opt.rel_tol = 1e-8;
  opt.abs_tol = 1e-10;
  auto result = solve_bvp(sys, bc, guess, opt);

  CHECK(result.solution.mesh().node_count() <= 5);  // never refined
  for (double x : {0.0, 0.1, 0.35, 0.5, 0.77, 1.0}) {
    CHECK(result.solution.value_at(x, 0) == doctest::Approx(x).epsilon(1e-13));
    CHECK(result.solution.derivative_at(x, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  auto res = estimate_residuals(result.solution, sys, bc);
  for (double r : res.interval) CHECK(r <= 1e-12);
  CHECK(res.boundary <= 1e-12);
}

TEST_CASE("evaluate_solution basics") {
  auto sys = straight_line_system();
  auto bc = dirichlet(0.0, 1.0);
  auto result = solve_bvp(sys, bc, flat_guess(sys, Mesh::uniform(0.0, 1.0, 5)), SolverOptions{});
  SUBCASE("value and derivative at interior point") {
    Eigen::VectorXd v = result.solution.value_at(0.5);
    Eigen::VectorXd d = result.solution.derivative_at(0.5);
    CHECK(v(0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(d(0) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("out of domain throws") {
    CHECK_THROWS_AS(result.solution.value_at(-0.01), OutOfDomain);
    CHECK_THROWS_AS(result.solution.value_at(1.01), OutOfDomain);
  }
}

TEST_CASE("sin(pi x) benchmark meets tolerance on output grid") {
  auto sys = sine_system();
  auto bc = dirichlet(0.0, 0.0);
  SolverOptions opt;
  opt.rel_tol = 1e-8;
  opt.abs_tol = 1e-8;
  auto result = solve_bvp(sys, bc, flat_guess(sys, Mesh::uniform(0.0, 1.0, 5)), opt);

  double max_err = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    max_err = std::max(max_err, std::abs(result.solution.value_at(x, 0) - std::sin(kPi * x)));
  }
  CHECK(max_err <= 1e-6);

  // derivative against the closed form
  CHECK(result.solution.derivative_at(0.25, 0) ==
        doctest::Approx(kPi * std::cos(kPi / 4.0)).epsilon(1e-5));

  // a converged run passes its own residual contract
  auto res = estimate_residuals(result.solution, sys, bc);
  const double thr = result.stats.threshold;
  for (double r : res.interval) CHECK(r <= thr);
  CHECK(res.boundary <= thr);
}

TEST_CASE("C1 continuity at interior nodes") {
  auto sys = sine_system();
  auto bc = dirichlet(0.0, 0.0);
  SolverOptions opt;
  opt.rel_tol = 1e-6;
  opt.abs_tol = 1e-8;
  auto result = solve_bvp(sys, bc, flat_guess(sys, Mesh::uniform(0.0, 1.0, 7)), opt);
  const auto& mesh = result.solution.mesh();
  for (int j = 1; j + 1 < mesh.node_count(); ++j) {
    const double x = mesh.nodes()[j];
    double vl[2], dl[2], vr[2], dr[2];
    result.solution.evaluate_side(x, Side::Left, vl, dl);
    result.solution.evaluate_side(x, Side::Right, vr, dr);
    for (int c = 0; c < 2; ++c) {
      CHECK(std::abs(vl[c] - vr[c]) <=
            1e-12 * std::max({std::abs(vl[c]), std::abs(vr[c]), 1e-30}));
      CHECK(std::abs(dl[c] - dr[c]) <=
            1e-12 * std::max({std::abs(dl[c]), std::abs(dr[c]), 1e-30}));
    }
  }
}

TEST_CASE("fourth-order convergence on fixed uniform meshes") {
  auto sys = sine_system();
  auto bc = dirichlet(0.0, 0.0);
  SolverOptions opt;
  opt.adaptation = false;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-12;

  auto max_error = [&](int n_nodes) {
    auto result = solve_bvp(sys, bc, flat_guess(sys, Mesh::uniform(0.0, 1.0, n_nodes)), opt);
    double err = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      err = std::max(err, std::abs(result.solution.value_at(x, 0) - std::sin(kPi * x)));
    }
    return err;
  };

  const double e1 = max_error(9);
  const double e2 = max_error(17);
  const double ratio = e1 / e2;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("residual locality under nodal perturbation") {
  auto sys = sine_system();
  auto bc = dirichlet(0.0, 0.0);
  SolverOptions opt;
  opt.rel_tol = 1e-6;
  opt.abs_tol = 1e-8;
  auto result = solve_bvp(sys, bc, flat_guess(sys, Mesh::uniform(0.0, 1.0, 9)), opt);
  auto base = estimate_residuals(result.solution, sys, bc);

  Eigen::MatrixXd slopes = result.solution.slopes();
  const int j = result.solution.mesh().node_count() / 2;
  slopes(0, j) += 0.1;
  CollocationSolution perturbed(result.solution.mesh(), result.solution.values(), slopes);
  auto pert = estimate_residuals(perturbed, sys, bc);

  for (int i = 0; i < static_cast<int>(base.interval.size()); ++i) {
    if (i == j - 1 || i == j) {
      CHECK(pert.interval[i] > 100.0 * base.interval[i]);
    } else {
      CHECK(pert.interval[i] == doctest::Approx(base.interval[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("adapt_mesh rules") {
  SolverOptions opt;
  opt.rel_tol = 0.0;
  opt.abs_tol = 1e-3;
  Mesh mesh = Mesh::uniform(0.0, 1.0, 5);

  SUBCASE("all below 0.1x tolerance: node count does not increase") {
    std::vector<double> res(4, 1e-4);
    Mesh adapted = adapt_mesh(mesh, res, opt, {});
    CHECK(adapted.node_count() <= mesh.node_count());
  }
  SUBCASE("one interval far above tolerance is split at its midpoint") {
    std::vector<double> res = {1e-5, 0.1, 1e-5, 1e-5};
    Mesh adapted = adapt_mesh(mesh, res, opt, {});
    const auto& nodes = adapted.nodes();
    CHECK(std::find(nodes.begin(), nodes.end(), 0.375) != nodes.end());
    CHECK(adapted.node_count() >= mesh.node_count());
  }
  SUBCASE("far-below-threshold pairs merge, pinned nodes survive") {
    std::vector<double> res(4, 1e-9);
    Mesh merged = adapt_mesh(mesh, res, opt, {});
    CHECK(merged.node_count() < mesh.node_count());
    const double pin = 0.25;
    Mesh kept = adapt_mesh(mesh, res, opt, std::span<const double>(&pin, 1));
    CHECK(std::find(kept.nodes().begin(), kept.nodes().end(), pin) != kept.nodes().end());
  }
  SUBCASE("overflow throws") {
    std::vector<double> res(4, 1.0);
    opt.max_nodes = 5;
    CHECK_THROWS_AS(adapt_mesh(mesh, res, opt, {}), MeshOverflow);
  }
}

TEST_CASE("determinism: identical inputs give bit-identical output") {
  auto sys = sine_system();
  auto bc = dirichlet(0.0, 0.0);
  SolverOptions opt;
  opt.rel_tol = 1e-7;
  opt.abs_tol = 1e-9;
  auto r1 = solve_bvp(sys, bc, flat_guess(sys, Mesh::uniform(0.0, 1.0, 5)), opt);
  auto r2 = solve_bvp(sys, bc, flat_guess(sys, Mesh::uniform(0.0, 1.0, 5)), opt);
  REQUIRE(r1.solution.mesh().nodes() == r2.solution.mesh().nodes());
  CHECK(r1.solution.values() == r2.solution.values());
  CHECK(r1.solution.slopes() == r2.solution.slopes());
}

TEST_CASE("solver failure paths") {
  SUBCASE("non-finite rhs ends in NonConvergence after refinement attempts") {
    OdeSystem sys;
    sys.dimension = 2;
    sys.rhs = [](double, std::span<const double>, std::span<double> f) {
      f[0] = std::numeric_limits<double>::quiet_NaN();
      f[1] = 0.0;
    };
    auto bc = dirichlet(0.0, 1.0);
    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(2, 5);
    CollocationSolution guess(Mesh::uniform(0.0, 1.0, 5), vals, vals);
    CHECK_THROWS_AS(solve_bvp(sys, bc, guess, SolverOptions{}),
                    SingularJacobian);
  }
  SUBCASE("max_nodes below guess size overflows") {
    auto sys = sine_system();
    auto bc = dirichlet(0.0, 0.0);
    SolverOptions opt;
    opt.max_nodes = 3;
    CHECK_THROWS_AS(solve_bvp(sys, bc, flat_guess(sys, Mesh::uniform(0.0, 1.0, 5)), opt),
                    MeshOverflow);
  }
}
