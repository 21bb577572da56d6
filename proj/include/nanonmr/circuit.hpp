// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nanonmr/gates.hpp"

namespace nanonmr {

// One scheduling moment: a set of gates acting on disjoint qubits, plus the
// wall-clock duration of the moment (max gate duration within it).
struct Moment {
  std::vector<int> gate_indices;
  double duration_us = 0.0;
};

struct GateDurations {
  double sqg_us = 0.06;   // physical single-qubit gate
  double tqg_us = 0.027;  // native two-qubit gate; a Swap counts as three
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<Moment> moments;  // empty until scheduled

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  void add(const Gate& g);
  bool scheduled() const { return !moments.empty(); }
};

struct GateCounts {
  long long n_tqg = 0;        // two-qubit gates; Swap counted as 3
  long long n_sqg = 0;        // physical single-qubit gates only
  long long n_swap = 0;       // Swap gates (swap-equivalents)
  long long tqg_depth = 0;    // moments containing at least one two-qubit gate
};

// ASAP greedy schedule; per-qubit gate order is preserved. Virtual gates,
// Reset and Barrier take zero time; Swap takes three TQG slots.
Circuit schedule_moments(const Circuit& c, const GateDurations& durations);

double gate_duration(const Gate& g, const GateDurations& durations);

// Counting per the layout-optimization conventions: N_SQG excludes virtual
// Rz, a Swap contributes 3 to N_TQG. Schedules internally if needed.
GateCounts count_gates(const Circuit& c);

// Interchange format:
//   {"n_qubits": int, "gates": [{"kind": str, "qubits": [..], "params": [..]}]}
// Field order is fixed; angles are serialized with 17 significant digits.
// Rz gates carry an extra "virtual" flag and tagged gates carry "tag" /
// "sim_dt" so compiled circuits round-trip exactly.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

}  // namespace nanonmr
