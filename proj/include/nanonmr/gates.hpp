// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

namespace nanonmr {

// Gate-level IR. Angles are radians. Two-qubit matrices are written in the
// basis |q0 q1> with qubits[0] the more significant bit.
enum class GateKind {
  Rxy,      // params (phi, theta): exp(-i (cos phi X + sin phi Y) theta/2)
  Rz,       // param theta: exp(-i Z theta/2); virtual by default
  X,
  Y,
  Hadamard,
  UZZ,      // param phi: diag(e^-i phi, e^i phi, e^i phi, e^-i phi)
  CZ,       // param phi: diag(1, 1, 1, e^-i phi)
  ISwap,    // |01> -> -i|10>, |10> -> -i|01>
  Swap,
  Cnot,     // control = qubits[0]
  Reset,    // non-unitary, resets to |0>
  Barrier,  // scheduling marker across all qubits; no effect
};

// Role tags let the executor apply drive-amplitude fluctuations to the right
// rotations (continuous drive pulses and pi-pulses of the pulsed scheme).
enum class GateTag { None, Drive, PiPulse };

struct Gate {
  GateKind kind;
  std::array<int, 2> qubits{-1, -1};
  double p0 = 0.0;
  double p1 = 0.0;
  bool is_virtual = false;  // Rz only: zero duration, zero error
  GateTag tag = GateTag::None;
  double sim_dt = 0.0;      // simulated protocol time carried by a tagged gate

  static Gate rxy(int q, double phi, double theta);
  static Gate rz(int q, double theta, bool virtual_rz = true);
  static Gate x(int q);
  static Gate y(int q);
  static Gate h(int q);
  static Gate uzz(int a, int b, double phi);
  static Gate cz(int a, int b, double phi);
  static Gate iswap(int a, int b);
  static Gate swap(int a, int b);
  static Gate cnot(int control, int target);
  static Gate reset(int q);
  static Gate barrier();

  int arity() const;         // 1 or 2 (Barrier reports 0)
  bool is_two_qubit() const;
  // physical single-qubit gate in the Rxy family (virtual Rz excluded)
  bool is_physical_sqg() const;
  // diagonal in the computational basis
  bool is_diagonal() const;
};

const char* gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

// Exact unitary of a gate, 2x2 or 4x4. Reset and Barrier have no unitary
// and throw std::invalid_argument.
Eigen::MatrixXcd gate_matrix(const Gate& g);

}  // namespace nanonmr
