// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace nanonmr {

enum class TopologyKind { Star, SquareGrid, LinearChain, AllToAll };

// Physical qubit connectivity. The square grid is embedded as a snake-ordered
// near-square lattice, so consecutive physical indices are always adjacent
// and the chain protocols apply to it unchanged.
struct Topology {
  TopologyKind kind = TopologyKind::AllToAll;
  int n_qubits = 0;
  int hub = 0;  // star only

  static Topology star(int n, int hub = 0);
  static Topology square_grid(int n);
  static Topology linear_chain(int n);
  static Topology all_to_all(int n);

  bool adjacent(int a, int b) const;
  std::vector<std::pair<int, int>> edges() const;
};

const char* topology_kind_name(TopologyKind kind);
TopologyKind topology_kind_from_name(const std::string& name);

}  // namespace nanonmr
