#include "mohl/bvp/solution.hpp"

#include "mohl/errors.hpp"

namespace mohl::bvp {

CollocationSolution::CollocationSolution(Mesh mesh, Eigen::MatrixXd values,
                                         Eigen::MatrixXd slopes)
    : mesh_(std::move(mesh)), values_(std::move(values)), slopes_(std::move(slopes)) {
  if (values_.cols() != mesh_.node_count() || slopes_.cols() != mesh_.node_count() ||
      values_.rows() != slopes_.rows()) {
    throw ConfigError("collocation solution shape mismatch");
  }
}

void CollocationSolution::eval_on_interval(int interval, double x, std::span<double> value,
                                           std::span<double> derivative) const {
  const double h = mesh_.spacing(interval);
  const double s = (x - mesh_.nodes()[interval]) / h;
  // Hermite basis on [0, 1]
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 1.0 - 3.0 * s2 + 2.0 * s3;
  const double h10 = s - 2.0 * s2 + s3;
  const double h01 = 3.0 * s2 - 2.0 * s3;
  const double h11 = s3 - s2;
  const double d00 = (-6.0 * s + 6.0 * s2) / h;
  const double d10 = 1.0 - 4.0 * s + 3.0 * s2;
  const double d01 = (6.0 * s - 6.0 * s2) / h;
  const double d11 = 3.0 * s2 - 2.0 * s;
  const int d = dimension();
  for (int c = 0; c < d; ++c) {
    const double yl = values_(c, interval);
    const double yr = values_(c, interval + 1);
    const double fl = slopes_(c, interval);
    const double fr = slopes_(c, interval + 1);
    value[c] = h00 * yl + h01 * yr + h * (h10 * fl + h11 * fr);
    derivative[c] = d00 * yl + d01 * yr + d10 * fl + d11 * fr;
  }
}

void CollocationSolution::evaluate(double x, std::span<double> value,
                                   std::span<double> derivative) const {
  const int interval = mesh_.locate(x);
  // Nodal evaluations reproduce the stored values and slopes exactly.
  if (x == mesh_.nodes()[interval]) {
    for (int c = 0; c < dimension(); ++c) {
      value[c] = values_(c, interval);
      derivative[c] = slopes_(c, interval);
    }
    return;
  }
  if (x == mesh_.nodes()[interval + 1]) {
    for (int c = 0; c < dimension(); ++c) {
      value[c] = values_(c, interval + 1);
      derivative[c] = slopes_(c, interval + 1);
    }
    return;
  }
  eval_on_interval(interval, x, value, derivative);
}

void CollocationSolution::evaluate_side(double x, Side side, std::span<double> value,
                                        std::span<double> derivative) const {
  int interval = mesh_.locate(x);
  if (side == Side::Left && x == mesh_.nodes()[interval] && interval > 0) {
    interval -= 1;
  }
  eval_on_interval(interval, x, value, derivative);
}

Eigen::VectorXd CollocationSolution::value_at(double x) const {
  Eigen::VectorXd v(dimension()), d(dimension());
  evaluate(x, {v.data(), static_cast<std::size_t>(v.size())},
           {d.data(), static_cast<std::size_t>(d.size())});
  return v;
}

Eigen::VectorXd CollocationSolution::derivative_at(double x) const {
  Eigen::VectorXd v(dimension()), d(dimension());
  evaluate(x, {v.data(), static_cast<std::size_t>(v.size())},
           {d.data(), static_cast<std::size_t>(d.size())});
  return d;
}

double CollocationSolution::value_at(double x, int component) const {
  return value_at(x)(component);
}

double CollocationSolution::derivative_at(double x, int component) const {
  return derivative_at(x)(component);
}

}  // namespace mohl::bvp
