// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nanonmr/circuit.hpp"
#include "nanonmr/topology.hpp"

namespace nanonmr {

// A routed circuit plus the logical->physical layout before and after.
// Routing preserves the input gate order exactly (it only inserts Swaps and
// relabels qubits), so the routed unitary equals the logical unitary once
// the two layout permutations are accounted for.
struct RoutedCircuit {
  Circuit circuit;
  std::vector<int> initial_layout;  // logical -> physical
  std::vector<int> final_layout;    // logical -> physical
};

// Topology-aware swap insertion for circuits synthesized for one NV center
// (logical qubit 0 in the hub role).
//  - star: hub-mediated; a two-qubit gate not touching the hub swaps its
//    first operand into the hub ("interact with all, then swap").
//  - linear chain / square grid, noninteracting: the NV starts on the second
//    qubit, interacts left and right, then walks rightward.
//  - linear chain / square grid, interacting: odd-even swap layers.
//  - all-to-all: identity.
// Gate streams emitted with the matching TermOrder reproduce the closed-form
// swap counts (star: n-2, chain/grid: (n-1)(n-2)/2 in the interacting case).
RoutedCircuit route(const Circuit& c, const Topology& topo, bool interacting);

enum class NativeGateSet { UZZParam, UZZFixed, CZFixed, Cnot };

const char* native_gate_set_name(NativeGateSet native);
NativeGateSet native_gate_set_from_name(const std::string& name);

// Rewrite UZZ(phi) and Swap gates over a native two-qubit basis. Overheads
// per UZZ(phi): UZZParam 1 TQG/0 SQG, UZZFixed (UZZ(-pi/4)) 2/5,
// CZFixed (CZ(pi)) 2/3, Cnot 2/1 (the mid Rz is physical). A Swap becomes
// three native TQGs. Unitary is preserved up to global phase.
Circuit decompose_native(const Circuit& c, NativeGateSet native);

// Closed-form gate counts for one Trotter step (star / square grid /
// all-to-all, with and without internuclear interactions), exactly as
// tabulated. The noninteracting grid row is exposed as printed even though
// the chain protocol's own counter reports fewer gates; see README.
struct ClosedFormCounts {
  double n_tqg = 0.0;
  double n_sqg = 0.0;
};
ClosedFormCounts closed_form_counts(int n, bool interacting, const Topology& topo);

// Closed-form swap counts backing the savings metric.
long long closed_form_swaps(int n, bool interacting, const Topology& topo);

// 1 - (star swaps)/(grid swaps); 1.0 for the noninteracting case (the star
// needs none). Throws for n < 3.
double swap_savings(int n, bool interacting);

// Printed TQG-depth closed forms, interacting case: star (3/2)n^2+(3/2)n-6,
// square grid 6n. Other topologies are not tabulated and throw.
long long tqg_depth_form(int n, const Topology& topo);

// 1 - (1-eps_tqg)^N_tqg * (1-eps_sqg)^N_sqg
double gate_error_bound(long long n_tqg, long long n_sqg, double eps_tqg,
                        double eps_sqg);

// Carry the hub state on a central resonator: prepend an iSWAP from the
// selected qubit (the old hub, physical 0) into a fresh resonator qubit,
// remap every hub gate there, and append the inverse iSWAP for measurement.
// All hub two-qubit gates must be diagonal (UZZ/CZ); a non-diagonal hub gate
// between the iSWAPs throws. Adds exactly two two-qubit gates.
Circuit resonator_protocol_wrap(const Circuit& star_routed);

}  // namespace nanonmr
