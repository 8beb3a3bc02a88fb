#pragma once

#include <vector>

namespace mohl::bvp {

/// Strictly increasing collocation nodes spanning [a, b].
class Mesh {
public:
  Mesh() = default;
  explicit Mesh(std::vector<double> nodes);

  static Mesh uniform(double a, double b, int node_count);

  const std::vector<double>& nodes() const { return nodes_; }
  double a() const { return nodes_.front(); }
  double b() const { return nodes_.back(); }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int interval_count() const { return node_count() - 1; }
  double spacing(int interval) const { return nodes_[interval + 1] - nodes_[interval]; }

  /// Index of the interval containing x; x == b maps to the last interval.
  int locate(double x) const;

  bool operator==(const Mesh& other) const { return nodes_ == other.nodes_; }

private:
  std::vector<double> nodes_;
};

}  // namespace mohl::bvp
