#pragma once

#include <Eigen/Dense>
#include <span>

#include "mohl/bvp/mesh.hpp"

namespace mohl::bvp {

enum class Side { Left, Right };

/// C1 piecewise-cubic collocation solution of the fourth-order three-point
/// Lobatto IIIA scheme. On every interval the polynomial is the Hermite
/// interpolant of the nodal values and nodal slopes f(x_j, y_j); the interior
/// collocation condition is enforced by the solver, so the stored slope
/// matches the ODE right-hand side at every node.
class CollocationSolution {
public:
  CollocationSolution() = default;
  CollocationSolution(Mesh mesh, Eigen::MatrixXd values, Eigen::MatrixXd slopes);

  const Mesh& mesh() const { return mesh_; }
  int dimension() const { return static_cast<int>(values_.rows()); }
  const Eigen::MatrixXd& values() const { return values_; }
  const Eigen::MatrixXd& slopes() const { return slopes_; }

  /// Value and first derivative at x. Throws OutOfDomain for x outside [a, b].
  void evaluate(double x, std::span<double> value, std::span<double> derivative) const;

  /// Same, but selects the adjoining interval when x is a mesh node
  /// (one-sided limits at layer interfaces).
  void evaluate_side(double x, Side side, std::span<double> value,
                     std::span<double> derivative) const;

  Eigen::VectorXd value_at(double x) const;
  Eigen::VectorXd derivative_at(double x) const;
  double value_at(double x, int component) const;
  double derivative_at(double x, int component) const;

private:
  void eval_on_interval(int interval, double x, std::span<double> value,
                        std::span<double> derivative) const;

  Mesh mesh_;
  Eigen::MatrixXd values_;  // dimension x node_count
  Eigen::MatrixXd slopes_;  // dimension x node_count
};

}  // namespace mohl::bvp
