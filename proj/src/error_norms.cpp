#include "mohl/post/error_norms.hpp"

#include <cmath>

#include "mohl/errors.hpp"

namespace mohl::post {

std::vector<double> l2_error_profile(const std::vector<Eigen::VectorXd>& num,
                                     const std::vector<Eigen::VectorXd>& ref) {
  if (num.size() != ref.size() || num.empty()) {
    throw GridMismatch("series must share the time sampling");
  }
  const Eigen::Index n = num.front().size();
  std::vector<double> profile(static_cast<std::size_t>(n), 0.0);
  for (std::size_t j = 0; j < num.size(); ++j) {
    if (num[j].size() != n || ref[j].size() != n) {
      throw GridMismatch("series must share the spatial grid");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = num[j](i) - ref[j](i);
      profile[static_cast<std::size_t>(i)] += d * d;
    }
  }
  const double inv_nt = 1.0 / static_cast<double>(num.size());
  for (double& p : profile) p = std::sqrt(p * inv_nt);
  return profile;
}

double inf_error(const std::vector<double>& profile) {
  double m = 0.0;
  for (double p : profile) m = std::max(m, p);
  return m;
}

ErrorReport make_error_report(const std::vector<double>& grid,
                              const std::vector<Eigen::VectorXd>& num_v,
                              const std::vector<Eigen::VectorXd>& num_u,
                              const std::vector<Eigen::VectorXd>& ref_v,
                              const std::vector<Eigen::VectorXd>& ref_u) {
  ErrorReport r;
  r.grid = grid;
  r.eps2_v = l2_error_profile(num_v, ref_v);
  r.eps2_u = l2_error_profile(num_u, ref_u);
  r.eps_inf_v = inf_error(r.eps2_v);
  r.eps_inf_u = inf_error(r.eps2_u);
  r.n_t = static_cast<int>(num_v.size());
  return r;
}

std::vector<double> relative_error_series(std::span<const double> num,
                                          std::span<const double> meas) {
  if (num.size() != meas.size()) throw GridMismatch("series lengths differ");
  std::vector<double> out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (meas[i] == 0.0) throw ZeroMeasurement("measured value is zero");
    out[i] = std::sqrt((num[i] - meas[i]) * (num[i] - meas[i])) / meas[i];
  }
  return out;
}

double total_uncertainty(double sigma_meas, double sigma_pos_equivalent) {
  return std::sqrt(sigma_meas * sigma_meas + sigma_pos_equivalent * sigma_pos_equivalent);
}

}  // namespace mohl::post
