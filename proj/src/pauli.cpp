// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace nanonmr {

namespace {

Eigen::Matrix2cd pauli_letter(char c) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const std::complex<double> i(0.0, 1.0);
  switch (c) {
    case 'I': m.setIdentity(); break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
  return m;
}

}  // namespace

int PauliTerm::weight() const {
  int w = 0;
  for (char c : letters)
    if (c != 'I') ++w;
  return w;
}

std::vector<PauliTerm> PauliHamiltonian::all_terms() const {
  std::vector<PauliTerm> all = sqg_terms;
  all.insert(all.end(), tqg_terms.begin(), tqg_terms.end());
  return all;
}

PauliHamiltonian pauli_decompose(const SpinSystem& sys) {
  sys.validate();
  const int m = sys.n_nv;
  const int n = sys.n_nuclei;
  const int total = m + n;
  PauliHamiltonian ham;

  auto add = [&](std::vector<PauliTerm>& dst, double coeff,
                 std::initializer_list<std::pair<int, char>> ops) {
    if (coeff == 0.0) return;
    PauliTerm term;
    term.coeff = coeff;
    term.letters.assign(total, 'I');
    for (const auto& [q, letter] : ops) term.letters[q] = letter;
    dst.push_back(term);
  };

  // Single-qubit part. Nucleus k: -omega_c . I with I = sigma/2, so the
  // coefficient of sigma_mu is -omega_c_mu / 2 (equivalently A_mu/4 and
  // (A_z/2 - gamma_c Bz)/2 for a single NV). NV j: the detuning delta_j Z.
  for (int k = 0; k < n; ++k) {
    const Vec3 w = sys.omega_c(k);
    const int q = m + k;
    add(ham.sqg_terms, -0.5 * w.x(), {{q, 'X'}});
    add(ham.sqg_terms, -0.5 * w.y(), {{q, 'Y'}});
    add(ham.sqg_terms, -0.5 * w.z(), {{q, 'Z'}});
  }
  for (int j = 0; j < m; ++j) {
    add(ham.sqg_terms, sys.delta[j], {{j, 'Z'}});
  }

  // Two-qubit part. NV-nucleus: (A_mu/4) sigma_mu(nucleus) Z(NV);
  // internuclear: (g/4) ZZ - (g/8)(XX + YY); inter-NV: h (ZZ - XX - YY).
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < n; ++k) {
      const Vec3 a = sys.hyperfine[j][k];
      const int q = m + k;
      add(ham.tqg_terms, 0.25 * a.x(), {{q, 'X'}, {j, 'Z'}});
      add(ham.tqg_terms, 0.25 * a.y(), {{q, 'Y'}, {j, 'Z'}});
      add(ham.tqg_terms, 0.25 * a.z(), {{q, 'Z'}, {j, 'Z'}});
    }
  }
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1 + 1; k2 < n; ++k2) {
      const double g = sys.g_between(k1, k2);
      const int a = m + k1, b = m + k2;
      add(ham.tqg_terms, 0.25 * g, {{a, 'Z'}, {b, 'Z'}});
      add(ham.tqg_terms, -0.125 * g, {{a, 'X'}, {b, 'X'}});
      add(ham.tqg_terms, -0.125 * g, {{a, 'Y'}, {b, 'Y'}});
    }
  }
  for (int j1 = 0; j1 < m; ++j1) {
    for (int j2 = j1 + 1; j2 < m; ++j2) {
      const double h = sys.h_between(j1, j2);
      add(ham.tqg_terms, h, {{j1, 'Z'}, {j2, 'Z'}});
      add(ham.tqg_terms, -h, {{j1, 'X'}, {j2, 'X'}});
      add(ham.tqg_terms, -h, {{j1, 'Y'}, {j2, 'Y'}});
    }
  }
  return ham;
}

double lambda_total(const PauliHamiltonian& ham) {
  double lambda = 0.0;
  for (const auto& t : ham.sqg_terms) lambda += std::abs(t.coeff);
  for (const auto& t : ham.tqg_terms) lambda += std::abs(t.coeff);
  return lambda;
}

Eigen::MatrixXcd pauli_string_matrix(const std::string& letters) {
  // qubit 0 (the first letter) is the most significant tensor factor
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) {
    const Eigen::Matrix2cd p = pauli_letter(c);
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (long long r = 0; r < m.rows(); ++r)
      for (long long cc = 0; cc < m.cols(); ++cc)
        next.block(r * 2, cc * 2, 2, 2) = m(r, cc) * p;
    m.swap(next);
  }
  return m;
}

Eigen::MatrixXcd to_matrix(const PauliHamiltonian& ham, int n_qubits) {
  const long long dim = 1LL << n_qubits;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : ham.all_terms()) {
    if (static_cast<int>(t.letters.size()) != n_qubits) {
      throw std::invalid_argument("Pauli string length does not match qubit count");
    }
    h += t.coeff * pauli_string_matrix(t.letters);
  }
  return h;
}

}  // namespace nanonmr
