// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace nanonmr {

// Coupling vectors are in rad/us, positions in nm, fields in Tesla.
using Vec3 = Eigen::Vector3d;

// An ensemble of M NV-center spins and N carbon-13 nuclear spins, all
// spin-1/2, in a static field along z. NV spins carry full Pauli operators,
// nuclear spins carry sigma/2. Qubit indices 0..M-1 are NVs, M..M+N-1 nuclei.
//
// Convention note: we use the standard computational basis (|0> = ground,
// Z|0> = +|0>) and keep every published matrix verbatim in components. This
// differs from the source convention for the NV sigma_z by a relabeling of
// the two NV basis states; all protocol observables (resonance positions,
// transfer rates, refocusing behavior) are invariant under the relabel.
struct SpinSystem {
  int n_nv = 0;
  int n_nuclei = 0;
  std::vector<double> delta;               // per-NV detuning, rad/us
  std::vector<std::vector<Vec3>> hyperfine; // [nv][nucleus], rad/us
  Eigen::MatrixXd g_nn;                     // internuclear, entries (k,k') with k<k'
  Eigen::MatrixXd h_nv;                     // inter-NV, entries (j,j') with j<j'
  double bz = 0.0;                          // Tesla
  double gamma_c = 0.0;                     // rad/(us*T); defaulted in make()

  // Set by rotational_optimize when a nucleus frame is rotated; overrides the
  // derived modified Larmor vector for the affected nucleus.
  std::vector<std::optional<Vec3>> omega_override;

  static SpinSystem make(int n_nv, int n_nuclei);

  int total_qubits() const { return n_nv + n_nuclei; }

  // symmetric lookup of the internuclear / inter-NV couplings
  double g_between(int k1, int k2) const;
  double h_between(int j1, int j2) const;
  void set_g(int k1, int k2, double value);
  void set_h(int j1, int j2, double value);

  // modified Larmor vector of nucleus k: gamma_c*Bz*z_hat - 1/2 sum_j A_jk
  Vec3 omega_c(int k) const;

  // perpendicular hyperfine |A - (A.w_hat) w_hat| for NV j and nucleus k;
  // sets the polarization transfer rate A_perp/4
  double a_perp(int j, int k) const;

  // throws std::invalid_argument on inconsistent sizes or non-finite entries
  void validate() const;
};

// Build the couplings from NV and nucleus positions via the secular dipolar
// formulas. prefactor_en/nn are the dipolar constants in rad/us*nm^3
// (defaults from constants.hpp). Throws on coincident positions.
SpinSystem couplings_from_geometry(const std::vector<Vec3>& nv_positions,
                                   const std::vector<Vec3>& nucleus_positions,
                                   double bz_tesla,
                                   double prefactor_en = -1.0,
                                   double prefactor_nn = -1.0);

// JSON (de)serialization. The document carries either an explicit couplings
// block or a geometry block; exactly one must be present.
std::string spin_system_to_json(const SpinSystem& sys);
SpinSystem spin_system_from_json(const std::string& text);

}  // namespace nanonmr
