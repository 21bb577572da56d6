// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nanonmr/circuit.hpp"
#include "nanonmr/pauli.hpp"
#include "nanonmr/spin_system.hpp"

namespace nanonmr {

enum class DriveMode { Continuous, Pulsed };

// Microwave drive acting on the NV centers. For continuous driving, omega is
// the Rabi frequency Omega (rad/us) and the per-step drive gate is
// Rxy(-phi, Omega*dt). For pulsed driving, omega is the target resonance
// frequency: the interpulse spacing is tau = harmonic * pi / omega.
struct Drive {
  DriveMode mode = DriveMode::Continuous;
  double omega = 0.0;           // rad/us (Rabi for continuous, target for pulsed)
  double phi = 0.0;             // drive phase
  int harmonic = 1;             // pulsed resonance harmonic n
  std::string pattern = "XYXYYXYX";
  int n_blocks = 1;             // pulsed pattern repetitions per sub-sequence
  int steps_per_interval = 1;   // Trotter steps per interpulse interval

  double tau() const;           // interpulse spacing, pulsed mode
  void validate() const;
};

enum class NvInit { Plus, Minus, Zero, One };

struct TrotterPlan {
  double t_final = 30.0;  // us of simulated evolution per cycle (continuous)
  int steps = 32;         // Trotter steps per cycle
  int cycles = 1;         // reset/re-init cycles
  int order = 1;          // 1 or 2 (Strang palindrome)

  void validate() const;
};

// Order in which the two-qubit term exponentials of one Trotter step are
// emitted. All three are valid splittings of the same step.
//  - Sweep: grouped by term type (XZ sweep, YZ sweep, ZZ sweep, then the
//    internuclear ZZ/XX/YY sweeps); the default.
//  - HubGrouped: NV-nucleus triples per nucleus, then per-pair triples in
//    lexicographic order; the order a star layout serves without re-routing.
//  - OddEven: per-pair triples in the adjacency order of the odd-even swap
//    pattern on a linear chain; the order a chain serves without re-routing.
enum class TermOrder { Sweep, HubGrouped, OddEven };

// ZYZ compilation of a single-qubit unitary: returns (beta, gamma, delta)
// with U = Rz(beta) * Rxy(pi/2, gamma) * Rz(delta) up to global phase.
// Throws if U is not unitary to 1e-10.
std::array<double, 3> zyz_decompose(const Eigen::Matrix2cd& u);

// One Trotter step of duration dt over the full system: the per-qubit
// single-qubit block (drive, detuning, nuclear Larmor+hyperfine means), then
// the grouped two-qubit exponentials. Non-ZZ terms are expressed through
// UZZ with basis-change rotations on the nucleus side only.
Circuit trotter_step(const SpinSystem& sys, const Drive& drive, double dt,
                     int order = 1, TermOrder term_order = TermOrder::Sweep);

// Pulse schedule for one cycle of the pulsed scheme: symmetric then
// asymmetric pi-pulse sub-sequences (the asymmetric one shifted by tau/2)
// with every free-evolution segment Trotterized, wrapped in the NV rotations
// that turn the two effective sigma_z couplings into the flip-flop exchange.
Circuit pulsed_schedule(const SpinSystem& sys, const Drive& drive,
                        const TrotterPlan& plan,
                        TermOrder term_order = TermOrder::Sweep);

// Full protocol: NV initialization, then per cycle the Trotterized evolution
// (continuous) or the pulse schedule (pulsed), a barrier marking the
// measurement point, NV reset and re-initialization. Nuclear initial states
// are sampled by the executor, not emitted as gates.
Circuit build_protocol(const SpinSystem& sys, const Drive& drive,
                       const TrotterPlan& plan, NvInit init,
                       TermOrder term_order = TermOrder::Sweep);

// qDRIFT: N_terms exponentials, each term j drawn with probability
// |h_j| / lambda and applied as exp(-i (lambda t_f / N_terms) sign(h_j) P_j).
// Deterministic given the seed. Throws if the Hamiltonian is empty.
Circuit qdrift_sample(const PauliHamiltonian& ham, int n_qubits, double t_f,
                      int n_terms, std::uint64_t seed);

// 2 lambda^2 t_f^2 / N_terms
double qdrift_error_bound(double lambda, double t_f, int n_terms);

struct RotationalOptimization {
  SpinSystem system;                 // rotated frame: A_k along +z
  std::vector<Gate> counter_rotations;  // apply before measurement, one per nucleus
};

// Rotate each nuclear frame so its hyperfine vector points along +z, removing
// the XZ and YZ two-qubit terms. Only valid without internuclear couplings
// and for a single NV; throws otherwise.
RotationalOptimization rotational_optimize(const SpinSystem& sys);

// The pair order in which the odd-even pattern on a fresh chain of n qubits
// makes every pair adjacent; shared between synthesis and routing.
std::vector<std::pair<int, int>> odd_even_pair_schedule(int n);

}  // namespace nanonmr
