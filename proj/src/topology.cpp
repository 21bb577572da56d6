// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/topology.hpp"

#include <cmath>
#include <stdexcept>

namespace nanonmr {

namespace {

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("topology needs at least one qubit");
}

// near-square lattice: columns = ceil(sqrt(n)), rows as needed
int grid_cols(int n) {
  int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  return cols < 1 ? 1 : cols;
}

// snake embedding: physical index -> (row, col)
std::pair<int, int> snake_coords(int index, int cols) {
  const int row = index / cols;
  const int in_row = index % cols;
  const int col = (row % 2 == 0) ? in_row : cols - 1 - in_row;
  return {row, col};
}

}  // namespace

Topology Topology::star(int n, int hub) {
  check_n(n);
  if (hub < 0 || hub >= n) throw std::invalid_argument("hub out of range");
  Topology t;
  t.kind = TopologyKind::Star;
  t.n_qubits = n;
  t.hub = hub;
  return t;
}

Topology Topology::square_grid(int n) {
  check_n(n);
  Topology t;
  t.kind = TopologyKind::SquareGrid;
  t.n_qubits = n;
  return t;
}

Topology Topology::linear_chain(int n) {
  check_n(n);
  Topology t;
  t.kind = TopologyKind::LinearChain;
  t.n_qubits = n;
  return t;
}

Topology Topology::all_to_all(int n) {
  check_n(n);
  Topology t;
  t.kind = TopologyKind::AllToAll;
  t.n_qubits = n;
  return t;
}

bool Topology::adjacent(int a, int b) const {
  if (a == b || a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) return false;
  switch (kind) {
    case TopologyKind::AllToAll:
      return true;
    case TopologyKind::Star:
      return a == hub || b == hub;
    case TopologyKind::LinearChain:
      return std::abs(a - b) == 1;
    case TopologyKind::SquareGrid: {
      const int cols = grid_cols(n_qubits);
      const auto [ra, ca] = snake_coords(a, cols);
      const auto [rb, cb] = snake_coords(b, cols);
      return std::abs(ra - rb) + std::abs(ca - cb) == 1;
    }
  }
  return false;
}

std::vector<std::pair<int, int>> Topology::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_qubits; ++a)
    for (int b = a + 1; b < n_qubits; ++b)
      if (adjacent(a, b)) out.emplace_back(a, b);
  return out;
}

const char* topology_kind_name(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Star: return "star";
    case TopologyKind::SquareGrid: return "square_grid";
    case TopologyKind::LinearChain: return "linear_chain";
    case TopologyKind::AllToAll: return "all_to_all";
  }
  return "?";
}

TopologyKind topology_kind_from_name(const std::string& name) {
  if (name == "star") return TopologyKind::Star;
  if (name == "square_grid") return TopologyKind::SquareGrid;
  if (name == "linear_chain") return TopologyKind::LinearChain;
  if (name == "all_to_all") return TopologyKind::AllToAll;
  throw std::invalid_argument("unknown topology: " + name);
}

}  // namespace nanonmr
