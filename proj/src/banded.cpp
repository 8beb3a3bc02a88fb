#include "mohl/reference/banded.hpp"

#include <algorithm>
#include <cmath>

#include "mohl/errors.hpp"

namespace mohl::reference {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), rows_(2 * kl + ku + 1), data_(static_cast<std::size_t>(rows_) * n) {}

void BandedMatrix::clear() { std::fill(data_.begin(), data_.end(), 0.0); }

double& BandedMatrix::at(int i, int j) {
  // row i, column j with kl <= j - i + kl + ku <= ...; caller stays in band
  return data_[static_cast<std::size_t>(j) * rows_ + (kl_ + ku_ + i - j)];
}

void BandedMatrix::solve(std::vector<double>& rhs) {
  const int n = n_, kl = kl_, ku = ku_;
  auto entry = [&](int i, int j) -> double& {
    return data_[static_cast<std::size_t>(j) * rows_ + (kl + ku + i - j)];
  };
  for (int k = 0; k < n; ++k) {
    // pivot search within the subdiagonal band
    int piv = k;
    double pmax = std::abs(entry(k, k));
    const int ilast = std::min(n - 1, k + kl);
    for (int i = k + 1; i <= ilast; ++i) {
      const double v = std::abs(entry(i, k));
      if (v > pmax) {
        pmax = v;
        piv = i;
      }
    }
    if (pmax == 0.0 || !std::isfinite(pmax)) {
      throw SingularJacobian("banded solve hit a zero pivot");
    }
    const int jlast = std::min(n - 1, k + kl + ku);
    if (piv != k) {
      for (int j = k; j <= jlast; ++j) std::swap(entry(k, j), entry(piv, j));
      std::swap(rhs[k], rhs[piv]);
    }
    const double dk = entry(k, k);
    for (int i = k + 1; i <= ilast; ++i) {
      const double m = entry(i, k) / dk;
      if (m == 0.0) continue;
      for (int j = k + 1; j <= jlast; ++j) entry(i, j) -= m * entry(k, j);
      rhs[i] -= m * rhs[k];
      entry(i, k) = 0.0;
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double acc = rhs[i];
    const int jlast = std::min(n - 1, i + kl + ku);
    for (int j = i + 1; j <= jlast; ++j) acc -= entry(i, j) * rhs[j];
    rhs[i] = acc / entry(i, i);
  }
}

}  // namespace mohl::reference
