// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nanonmr/constants.hpp"
#include "nanonmr/engine.hpp"
#include "nanonmr/pauli.hpp"
#include "nanonmr/rng.hpp"
#include "nanonmr/spin_system.hpp"

using namespace nanonmr;

namespace {

SpinSystem random_system(int m, int n, std::uint64_t seed, bool interacting) {
  Rng rng(seed);
  SpinSystem sys = SpinSystem::make(m, n);
  sys.bz = 0.02 + 0.02 * rng.uniform();
  for (int j = 0; j < m; ++j) sys.delta[j] = rng.uniform(-1.0, 1.0);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < n; ++k)
      sys.hyperfine[j][k] =
          Vec3(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
  if (interacting) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) sys.set_g(a, b, rng.uniform(-0.05, 0.05));
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) sys.set_h(a, b, rng.uniform(-0.05, 0.05));
  }
  return sys;
}

}  // namespace

TEST_CASE("geometry: nucleus on the z axis") {
  const double r = 1.7;
  const SpinSystem sys =
      couplings_from_geometry({Vec3(0, 0, 0)}, {Vec3(0, 0, r)}, 0.01);
  const Vec3 a = sys.hyperfine[0][0];
  const double expected = -kDipolarEN / (r * r * r);
  CHECK(a.x() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.y() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.z() == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("geometry: nucleus in the xy plane") {
  const double r = 2.3;
  const SpinSystem sys =
      couplings_from_geometry({Vec3(0, 0, 0)}, {Vec3(r, 0, 0)}, 0.0);
  const Vec3 a = sys.hyperfine[0][0];
  CHECK(a.z() == doctest::Approx(kDipolarEN / (2.0 * r * r * r)).epsilon(1e-14));
  CHECK(a.x() == doctest::Approx(0.0).epsilon(1e-15));
  // zero field is allowed: omega_c is purely hyperfine
  CHECK(sys.omega_c(0).norm() == doctest::Approx(0.5 * a.norm()).epsilon(1e-12));
}

TEST_CASE("geometry: two nuclei separated along z") {
  const double r = 0.9;
  const SpinSystem sys = couplings_from_geometry(
      {Vec3(5, 0, 0)}, {Vec3(0, 0, 0), Vec3(0, 0, r)}, 0.01);
  CHECK(sys.g_between(0, 1) ==
        doctest::Approx(-kDipolarNN / (r * r * r)).epsilon(1e-14));
}

TEST_CASE("geometry: coincident positions are rejected") {
  CHECK_THROWS_AS(
      couplings_from_geometry({Vec3(0, 0, 0)}, {Vec3(0, 0, 0)}, 0.01),
      std::invalid_argument);
}

TEST_CASE("geometry: 1/r^3 scaling is exact under doubling") {
  const std::vector<Vec3> nv = {Vec3(0, 0, 0)};
  const std::vector<Vec3> nuclei = {Vec3(0.5, 0.25, 1.0), Vec3(-1.0, 0.75, 0.5)};
  const SpinSystem base = couplings_from_geometry(nv, nuclei, 0.01);
  std::vector<Vec3> doubled;
  for (const Vec3& p : nuclei) doubled.push_back(2.0 * p);
  const SpinSystem big = couplings_from_geometry(nv, doubled, 0.01);
  for (int k = 0; k < 2; ++k) {
    CHECK((base.hyperfine[0][k] - 8.0 * big.hyperfine[0][k]).norm() == 0.0);
  }
  CHECK(base.g_between(0, 1) == 8.0 * big.g_between(0, 1));
}

TEST_CASE("omega_c matches its defining combination") {
  const SpinSystem sys = random_system(2, 3, 11, true);
  for (int k = 0; k < sys.n_nuclei; ++k) {
    Vec3 expected(0, 0, sys.gamma_c * sys.bz);
    for (int j = 0; j < sys.n_nv; ++j) expected -= 0.5 * sys.hyperfine[j][k];
    CHECK((sys.omega_c(k) - expected).norm() < 1e-15);
  }
}

TEST_CASE("pauli_decompose: term counts for M=1, N=2 with all couplings") {
  SpinSystem sys = random_system(1, 2, 5, true);
  const PauliHamiltonian ham = pauli_decompose(sys);
  CHECK(ham.sqg_terms.size() == 7);  // 3 per nucleus + 1 NV detuning
  CHECK(ham.tqg_terms.size() == 9);  // 3 per NV-nucleus pair + 3 internuclear
  for (const auto& t : ham.sqg_terms) CHECK(t.weight() == 1);
  for (const auto& t : ham.tqg_terms) CHECK(t.weight() == 2);
}

TEST_CASE("pauli_decompose: interaction-free system keeps only nuclear Z") {
  SpinSystem sys = SpinSystem::make(1, 2);
  sys.bz = 0.03;
  const PauliHamiltonian ham = pauli_decompose(sys);
  CHECK(ham.tqg_terms.empty());
  CHECK(ham.sqg_terms.size() == 2);
  for (const auto& t : ham.sqg_terms) {
    CHECK(t.letters.find('Z') != std::string::npos);
    CHECK(t.letters.find('X') == std::string::npos);
  }
}

TEST_CASE("pauli_decompose: the nucleus-X NV-Z term carries A_x/4") {
  SpinSystem sys = SpinSystem::make(1, 2);
  sys.bz = 0.02;
  sys.hyperfine[0][0] = Vec3(0.4, 0.0, 0.0);
  sys.hyperfine[0][1] = Vec3(0.0, 0.0, 0.2);
  const PauliHamiltonian ham = pauli_decompose(sys);
  bool found = false;
  for (const auto& t : ham.tqg_terms) {
    if (t.letters == "ZXI") {  // Z on the NV (qubit 0), X on nucleus 0
      CHECK(t.coeff == doctest::Approx(0.1).epsilon(1e-15));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("pauli reconstruction equals the ladder-operator Hamiltonian") {
  // dual route: Appendix-style Pauli coefficients vs the direct
  // interaction-form construction
  for (auto [m, n, seed] :
       {std::tuple<int, int, int>{1, 2, 3}, {1, 3, 4}, {2, 2, 5}, {2, 1, 6}}) {
    const SpinSystem sys = random_system(m, n, seed, true);
    const Eigen::MatrixXcd via_pauli = to_matrix(pauli_decompose(sys), m + n);
    const Eigen::MatrixXcd direct = hamiltonian_matrix(sys, nullptr);
    CHECK((via_pauli - direct).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("lambda_total") {
  PauliHamiltonian empty;
  CHECK(lambda_total(empty) == 0.0);

  PauliHamiltonian single;
  single.sqg_terms.push_back({-2.0, "ZI"});
  CHECK(lambda_total(single) == 2.0);

  SpinSystem sys = SpinSystem::make(1, 1);
  sys.bz = 0.02;
  sys.delta[0] = -0.3;
  sys.hyperfine[0][0] = Vec3(0.2, -0.1, 0.4);
  const double gb = sys.gamma_c * sys.bz;
  // hand enumeration of the single-NV single-nucleus coefficients
  const double expected = 0.2 / 4 + 0.1 / 4 + std::abs(0.4 / 2 - gb) / 2 + 0.3 +
                          0.2 / 4 + 0.1 / 4 + 0.4 / 4;
  CHECK(lambda_total(pauli_decompose(sys)) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("a_perp is invariant under rotations of A about omega_c") {
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    SpinSystem sys = SpinSystem::make(1, 1);
    sys.bz = 0.03;
    sys.hyperfine[0][0] =
        Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec3 w = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(1, 2));
    sys.omega_override[0] = w;  // pin the axis so only A rotates
    const double before = sys.a_perp(0, 0);

    const Vec3 axis = w.normalized();
    const double angle = rng.uniform(0.0, kTwoPi);
    const Vec3 a = sys.hyperfine[0][0];
    sys.hyperfine[0][0] = a * std::cos(angle) + axis.cross(a) * std::sin(angle) +
                          axis * axis.dot(a) * (1.0 - std::cos(angle));
    CHECK(sys.a_perp(0, 0) == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("spin system JSON round trip") {
  const SpinSystem sys = random_system(1, 2, 21, true);
  const SpinSystem back = spin_system_from_json(spin_system_to_json(sys));
  CHECK(back.n_nv == sys.n_nv);
  CHECK(back.n_nuclei == sys.n_nuclei);
  CHECK(back.bz == sys.bz);
  for (int k = 0; k < 2; ++k) {
    CHECK((back.hyperfine[0][k] - sys.hyperfine[0][k]).norm() == 0.0);
  }
  CHECK(back.g_between(0, 1) == sys.g_between(0, 1));
  CHECK(back.delta[0] == sys.delta[0]);
}

TEST_CASE("spin system JSON accepts geometry and rejects ambiguous documents") {
  const std::string geo = R"({
    "geometry": {
      "nv_positions_nm": [[0, 0, 0]],
      "nucleus_positions_nm": [[0, 0, 1.5]],
      "bz_tesla": 0.02
    }
  })";
  const SpinSystem sys = spin_system_from_json(geo);
  CHECK(sys.n_nv == 1);
  CHECK(sys.n_nuclei == 1);
  CHECK(sys.hyperfine[0][0].z() != 0.0);

  CHECK_THROWS_AS(spin_system_from_json("{}"), std::invalid_argument);
  const std::string both = R"({"couplings": {"n_nv": 1, "n_nuclei": 0,
    "bz_tesla": 0.0}, "geometry": {}})";
  CHECK_THROWS_AS(spin_system_from_json(both), std::invalid_argument);
}

TEST_CASE("validate rejects lower-triangle couplings") {
  SpinSystem sys = SpinSystem::make(1, 2);
  sys.g_nn(1, 0) = 0.1;  // k' > k is the stored side
  CHECK_THROWS_AS(sys.validate(), std::invalid_argument);
}
