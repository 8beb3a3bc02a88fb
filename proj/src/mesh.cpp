#include "mohl/bvp/mesh.hpp"

#include <algorithm>
#include <stdexcept>

#include "mohl/errors.hpp"

namespace mohl::bvp {

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ConfigError("mesh needs at least 2 nodes");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) throw ConfigError("mesh nodes must be strictly increasing");
  }
}

Mesh Mesh::uniform(double a, double b, int node_count) {
  if (node_count < 2) throw ConfigError("mesh needs at least 2 nodes");
  if (!(b > a)) throw ConfigError("mesh requires b > a");
  std::vector<double> nodes(node_count);
  for (int i = 0; i < node_count; ++i) {
    nodes[i] = a + (b - a) * static_cast<double>(i) / (node_count - 1);
  }
  nodes.front() = a;
  nodes.back() = b;
  return Mesh(std::move(nodes));
}

int Mesh::locate(double x) const {
  if (x < nodes_.front() || x > nodes_.back()) throw OutOfDomain("coordinate outside mesh domain");
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  int idx = static_cast<int>(it - nodes_.begin()) - 1;
  if (idx >= interval_count()) idx = interval_count() - 1;  // x == b
  if (idx < 0) idx = 0;
  return idx;
}

}  // namespace mohl::bvp
