#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace mohl::post {

/// Time-averaged pointwise error profiles and their spatial maxima.
struct ErrorReport {
  std::vector<double> grid;
  std::vector<double> eps2_u, eps2_v;
  double eps_inf_u = 0.0, eps_inf_v = 0.0;
  int n_t = 0;
};

/// eps2(x) = sqrt( (1/N_t) * sum_j (num_j(x) - ref_j(x))^2 ) per grid point.
/// All snapshots must share the grid; throws GridMismatch otherwise.
std::vector<double> l2_error_profile(const std::vector<Eigen::VectorXd>& num,
                                     const std::vector<Eigen::VectorXd>& ref);

double inf_error(const std::vector<double>& profile);

/// Builds the two-field report; snapshot lists must be time-aligned
/// (the caller drops the identical initial layer).
ErrorReport make_error_report(const std::vector<double>& grid,
                              const std::vector<Eigen::VectorXd>& num_v,
                              const std::vector<Eigen::VectorXd>& num_u,
                              const std::vector<Eigen::VectorXd>& ref_v,
                              const std::vector<Eigen::VectorXd>& ref_u);

/// |num - meas| / meas per sample; throws ZeroMeasurement.
std::vector<double> relative_error_series(std::span<const double> num,
                                          std::span<const double> meas);

/// Euclidean combination of the measurement and position-equivalent
/// uncertainties.
double total_uncertainty(double sigma_meas, double sigma_pos_equivalent);

}  // namespace mohl::post
