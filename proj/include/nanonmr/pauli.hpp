// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "nanonmr/spin_system.hpp"

namespace nanonmr {

// One weighted Pauli string h * P_1 x ... x P_n over all qubits of a system.
// Letters are 'I', 'X', 'Y', 'Z'; coefficients are rad/us.
struct PauliTerm {
  double coeff = 0.0;
  std::string letters;

  int weight() const;
};

// The system Hamiltonian split into its single-qubit and two-qubit parts.
// sqg_terms hold weight-1 strings, tqg_terms weight-2 strings.
struct PauliHamiltonian {
  std::vector<PauliTerm> sqg_terms;
  std::vector<PauliTerm> tqg_terms;

  std::vector<PauliTerm> all_terms() const;
};

// Decompose the spin-system Hamiltonian into Pauli terms. Terms with exactly
// zero coefficient are dropped. Nuclear spin-1/2 factors are baked into the
// coefficients here (I = sigma/2), never into gate angles.
PauliHamiltonian pauli_decompose(const SpinSystem& sys);

// lambda = sum_j |h_j| over every term; the qDRIFT normalization weight.
double lambda_total(const PauliHamiltonian& ham);

// Dense matrix of one Pauli string (without its coefficient).
Eigen::MatrixXcd pauli_string_matrix(const std::string& letters);

// Dense reconstruction sum_j h_j P_j; qubit 0 is the most significant
// tensor factor.
Eigen::MatrixXcd to_matrix(const PauliHamiltonian& ham, int n_qubits);

}  // namespace nanonmr
