#pragma once

#include <span>
#include <vector>

#include "mohl/bvp/mesh.hpp"
#include "mohl/bvp/ode_system.hpp"
#include "mohl/bvp/solution.hpp"

namespace mohl::bvp {

struct SolverOptions {
  double rel_tol = 1e-6;
  double abs_tol = 1e-8;
  int max_nodes = 4000;
  int newton_max_iter = 16;
  double newton_damping = 0.5;  // backtracking factor in (0, 1]
  bool adaptation = true;       // false: solve on the given mesh and return as is
};

/// Quadrature norms of the continuous residual sol' - f(x, sol):
/// one scalar per interval plus the boundary-condition residual norm.
struct ResidualEstimate {
  std::vector<double> interval;
  double boundary = 0.0;
};

struct SolveStats {
  int newton_iterations = 0;
  int mesh_passes = 0;
  int final_nodes = 0;
  double max_interval_residual = 0.0;
  double boundary_residual = 0.0;
  double threshold = 0.0;  // rel_tol * scale + abs_tol at exit
};

struct SolveResult {
  CollocationSolution solution;
  SolveStats stats;
};

/// Builds an evaluable guess from nodal values; slopes are filled with the
/// system right-hand side at the nodes.
CollocationSolution nodal_guess(const OdeSystem& system, const Mesh& mesh,
                                const Eigen::MatrixXd& values);

/// Scalar solution scale: max over components of max(|nodal values|, 1).
double solution_scale(const Eigen::MatrixXd& values);

ResidualEstimate estimate_residuals(const CollocationSolution& sol, const OdeSystem& system,
                                    const BoundarySpec& bc);

/// Splits every interval whose residual exceeds rel_tol*scale + abs_tol at its
/// midpoint; merges adjacent interval pairs when both sit below 1/100 of the
/// threshold. Pinned coordinates are never removed.
Mesh adapt_mesh(const Mesh& mesh, const std::vector<double>& residuals,
                const SolverOptions& options, std::span<const double> pinned,
                double scale = 1.0);

/// Adaptive collocation solve of y' = f(x, y), psi(y(a), y(b)) = 0.
///
/// The guess supplies the initial mesh and nodal values. Pinned coordinates
/// (layer interfaces) are inserted into the mesh if absent and survive all
/// adaptation. On success the returned solution satisfies
/// estimate_residuals <= rel_tol*scale + abs_tol on every interval and at the
/// boundary. With options.adaptation == false the solve runs on the fixed
/// mesh and the residual contract is not enforced.
SolveResult solve_bvp(const OdeSystem& system, const BoundarySpec& bc,
                      const CollocationSolution& guess, const SolverOptions& options,
                      std::span<const double> pinned = {});

}  // namespace mohl::bvp
