#pragma once

#include <vector>

namespace mohl::reference {

/// Band matrix with kl sub- and ku superdiagonals, LAPACK-style storage with
/// kl extra rows for the partial-pivoting fill-in. Solves in place.
class BandedMatrix {
public:
  BandedMatrix(int n, int kl, int ku);

  void clear();
  double& at(int i, int j);

  /// Gaussian elimination with partial pivoting; overwrites the matrix.
  /// Throws SingularJacobian on a zero pivot.
  void solve(std::vector<double>& rhs);

private:
  int n_, kl_, ku_;
  int rows_;  // 2*kl + ku + 1
  std::vector<double> data_;  // column-major bands
};

}  // namespace mohl::reference
