// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nanonmr/constants.hpp"
#include "nanonmr/engine.hpp"
#include "nanonmr/route.hpp"
#include "nanonmr/rng.hpp"
#include "nanonmr/synth.hpp"

using namespace nanonmr;

namespace {

SpinSystem benchmark_system(int n, bool interacting) {
  SpinSystem sys = SpinSystem::make(1, n - 1);
  sys.bz = 0.0446;
  sys.delta[0] = 0.2;
  for (int k = 0; k < n - 1; ++k) {
    sys.hyperfine[0][k] = Vec3(0.2 + 0.01 * k, 0.05, 0.3 - 0.02 * k);
  }
  if (interacting) {
    for (int a = 0; a < n - 1; ++a)
      for (int b = a + 1; b < n - 1; ++b)
        sys.set_g(a, b, 0.02 + 0.001 * (a + b));
  }
  return sys;
}

Circuit step_for(const Topology& topo, int n, bool interacting) {
  const bool chain_like = topo.kind == TopologyKind::LinearChain ||
                          topo.kind == TopologyKind::SquareGrid;
  const TermOrder order =
      (chain_like && interacting) ? TermOrder::OddEven : TermOrder::HubGrouped;
  Drive drive;
  drive.omega = 2.5;
  return trotter_step(benchmark_system(n, interacting), drive, 0.4, 1, order);
}

// permutation matrix of a logical->physical layout
Eigen::MatrixXcd layout_permutation(const std::vector<int>& pos) {
  const int n = static_cast<int>(pos.size());
  const long long dim = 1LL << n;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (long long logical = 0; logical < dim; ++logical) {
    long long physical = 0;
    for (int l = 0; l < n; ++l) {
      if ((logical >> (n - 1 - l)) & 1) physical |= 1LL << (n - 1 - pos[l]);
    }
    p(physical, logical) = 1.0;
  }
  return p;
}

}  // namespace

TEST_CASE("topology adjacency") {
  const Topology star = Topology::star(5);
  CHECK(star.adjacent(0, 3));
  CHECK(!star.adjacent(1, 2));
  CHECK(star.edges().size() == 4);

  const Topology chain = Topology::linear_chain(5);
  CHECK(chain.adjacent(2, 3));
  CHECK(!chain.adjacent(0, 2));
  CHECK(chain.edges().size() == 4);

  // snake-embedded 2x3 grid: consecutive indices always adjacent
  const Topology grid = Topology::square_grid(6);
  for (int i = 0; i + 1 < 6; ++i) CHECK(grid.adjacent(i, i + 1));
  CHECK(grid.adjacent(0, 5));  // vertically below in the snake
  CHECK(!grid.adjacent(0, 3));
}

TEST_CASE("star routing: no swaps without internuclear interactions") {
  for (int n : {3, 4, 6}) {
    const RoutedCircuit r =
        route(step_for(Topology::star(n), n, false), Topology::star(n), false);
    CHECK(count_gates(r.circuit).n_swap == 0);
    CHECK(count_gates(r.circuit).n_tqg == 3 * (n - 1));
  }
}

TEST_CASE("star routing: n-2 swaps with interactions, 57 TQGs at n=6") {
  const RoutedCircuit r =
      route(step_for(Topology::star(6), 6, true), Topology::star(6), true);
  const GateCounts counts = count_gates(r.circuit);
  CHECK(counts.n_swap == 4);
  CHECK(counts.n_tqg == 57);
}

TEST_CASE("chain routing: odd-even pattern uses (n-1)(n-2)/2 swaps") {
  const RoutedCircuit r = route(step_for(Topology::square_grid(6), 6, true),
                                Topology::square_grid(6), true);
  const GateCounts counts = count_gates(r.circuit);
  CHECK(counts.n_swap == 10);
  CHECK(counts.n_tqg == 75);  // 3(n-1)^2
}

TEST_CASE("measured counts equal the closed forms for star and grid") {
  for (int n : {4, 5, 6, 9, 12}) {
    const GateCounts star = count_gates(
        route(step_for(Topology::star(n), n, true), Topology::star(n), true)
            .circuit);
    CHECK(static_cast<double>(star.n_tqg) ==
          closed_form_counts(n, true, Topology::star(n)).n_tqg);
    const GateCounts grid = count_gates(
        route(step_for(Topology::square_grid(n), n, true),
              Topology::square_grid(n), true)
            .circuit);
    CHECK(static_cast<double>(grid.n_tqg) ==
          closed_form_counts(n, true, Topology::square_grid(n)).n_tqg);
  }
}

TEST_CASE("routed two-qubit gates always act on adjacent physical qubits") {
  for (int n : {4, 5, 7}) {
    for (bool interacting : {false, true}) {
      for (const Topology& topo :
           {Topology::star(n), Topology::linear_chain(n), Topology::square_grid(n),
            Topology::all_to_all(n)}) {
        const RoutedCircuit r = route(step_for(topo, n, interacting), topo, interacting);
        for (const Gate& g : r.circuit.gates) {
          if (g.is_two_qubit()) {
            CHECK(topo.adjacent(g.qubits[0], g.qubits[1]));
          }
        }
      }
    }
  }
}

TEST_CASE("star-routed interacting circuits serialize every TQG") {
  const RoutedCircuit r =
      route(step_for(Topology::star(5), 5, true), Topology::star(5), true);
  const Circuit s = schedule_moments(r.circuit, GateDurations{});
  for (const Moment& m : s.moments) {
    int tqgs = 0;
    for (int gi : m.gate_indices)
      if (s.gates[gi].is_two_qubit()) ++tqgs;
    CHECK(tqgs <= 1);  // every TQG touches the hub
  }
  // depth counts each swap moment once while n_tqg counts a swap as 3
  const GateCounts counts = count_gates(r.circuit);
  CHECK(counts.tqg_depth == counts.n_tqg - 2 * counts.n_swap);
}

TEST_CASE("routing preserves the unitary once layouts are tracked") {
  for (int n : {4, 5}) {
    for (bool interacting : {false, true}) {
      for (const Topology& topo :
           {Topology::star(n), Topology::linear_chain(n), Topology::square_grid(n)}) {
        const Circuit logical = step_for(topo, n, interacting);
        const RoutedCircuit r = route(logical, topo, interacting);
        const Eigen::MatrixXcd u_logical = circuit_unitary(logical);
        const Eigen::MatrixXcd u_routed = circuit_unitary(r.circuit);
        const Eigen::MatrixXcd p_init = layout_permutation(r.initial_layout);
        const Eigen::MatrixXcd p_final = layout_permutation(r.final_layout);
        CHECK(phase_distance(u_routed, p_final * u_logical * p_init.adjoint()) <
              1e-10);
      }
    }
  }
}

TEST_CASE("routing also holds for sweep-ordered steps (more swaps, same unitary)") {
  const SpinSystem sys = benchmark_system(4, true);
  Drive drive;
  drive.omega = 2.0;
  const Circuit logical = trotter_step(sys, drive, 0.3, 1, TermOrder::Sweep);
  const Topology topo = Topology::star(4);
  const RoutedCircuit r = route(logical, topo, true);
  const Eigen::MatrixXcd expected = layout_permutation(r.final_layout) *
                                    circuit_unitary(logical) *
                                    layout_permutation(r.initial_layout).adjoint();
  CHECK(phase_distance(circuit_unitary(r.circuit), expected) < 1e-10);
}

TEST_CASE("closed-form counts reproduce the tabulated values at n=6") {
  CHECK(closed_form_counts(6, true, Topology::star(6)).n_tqg == 57.0);
  CHECK(closed_form_counts(6, true, Topology::square_grid(6)).n_tqg == 75.0);
  CHECK(closed_form_counts(6, true, Topology::all_to_all(6)).n_tqg == 45.0);
  CHECK(closed_form_counts(6, false, Topology::star(6)).n_tqg == 5.0);
  CHECK(closed_form_counts(6, false, Topology::square_grid(6)).n_tqg == 20.0);
  CHECK_THROWS_AS(closed_form_counts(2, true, Topology::star(2)),
                  std::invalid_argument);
}

TEST_CASE("swap savings") {
  CHECK(swap_savings(21, true) == 0.9);
  CHECK(swap_savings(4, false) == 1.0);
  CHECK(swap_savings(3, false) == 1.0);
  double prev = 0.0;
  for (int n = 4; n <= 64; ++n) {
    const double s = swap_savings(n, true);
    CHECK(s > prev);
    CHECK(s < 1.0);
    prev = s;
  }
  CHECK_THROWS_AS(swap_savings(2, true), std::invalid_argument);
}

TEST_CASE("printed depth forms") {
  CHECK(tqg_depth_form(6, Topology::star(6)) == 57);
  CHECK(tqg_depth_form(6, Topology::square_grid(6)) == 36);
  // the star serializes through the hub: depth form equals its TQG count form
  CHECK(static_cast<double>(tqg_depth_form(9, Topology::star(9))) ==
        closed_form_counts(9, true, Topology::star(9)).n_tqg);
  CHECK_THROWS_AS(tqg_depth_form(6, Topology::all_to_all(6)),
                  std::invalid_argument);
}

TEST_CASE("grid swap count stays above the n^2/6 lower bound") {
  for (int n = 4; n <= 20; ++n) {
    const long long swaps =
        closed_form_swaps(n, true, Topology::square_grid(n));
    CHECK(static_cast<double>(swaps) >= n * n / 6.0 - n);
  }
}

TEST_CASE("gate error bound") {
  CHECK(gate_error_bound(0, 0, 2e-3, 1e-4) == 0.0);
  const double e = gate_error_bound(57, 0, 2e-3, 1e-4);
  CHECK(e == doctest::Approx(1.0 - std::pow(0.998, 57)).epsilon(1e-15));
  CHECK(e == doctest::Approx(0.1078).epsilon(2e-3));
  CHECK(gate_error_bound(58, 0, 2e-3, 1e-4) > e);
  CHECK(gate_error_bound(57, 10, 2e-3, 1e-4) > e);
  CHECK(gate_error_bound(57, 0, 3e-3, 1e-4) > e);
  CHECK_THROWS_AS(gate_error_bound(1, 1, 1.5, 0.0), std::invalid_argument);
}

TEST_CASE("native decomposition overheads per UZZ") {
  Circuit c(2);
  c.add(Gate::uzz(0, 1, 0.77));
  const struct {
    NativeGateSet native;
    long long tqg, sqg;
  } expected[] = {
      {NativeGateSet::UZZParam, 1, 0},
      {NativeGateSet::UZZFixed, 2, 5},
      {NativeGateSet::CZFixed, 2, 3},
      {NativeGateSet::Cnot, 2, 1},
  };
  for (const auto& e : expected) {
    const Circuit d = decompose_native(c, e.native);
    const GateCounts counts = count_gates(d);
    CHECK(counts.n_tqg == e.tqg);
    CHECK(counts.n_sqg == e.sqg);
  }
}

TEST_CASE("native decomposition preserves the unitary up to phase") {
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    Circuit c(3);
    c.add(Gate::rxy(0, rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)));
    c.add(Gate::uzz(0, 1, rng.uniform(-kPi, kPi)));
    c.add(Gate::swap(1, 2));
    c.add(Gate::uzz(0, 2, rng.uniform(-kPi, kPi)));
    c.add(Gate::rz(2, rng.uniform(-kPi, kPi)));
    const Eigen::MatrixXcd u = circuit_unitary(c);
    for (NativeGateSet native : {NativeGateSet::UZZParam, NativeGateSet::UZZFixed,
                                 NativeGateSet::CZFixed, NativeGateSet::Cnot}) {
      CHECK(phase_distance(circuit_unitary(decompose_native(c, native)), u) < 1e-10);
    }
  }
}

TEST_CASE("a Swap becomes three native TQGs") {
  Circuit c(2);
  c.add(Gate::swap(0, 1));
  for (NativeGateSet native : {NativeGateSet::UZZParam, NativeGateSet::UZZFixed,
                               NativeGateSet::CZFixed, NativeGateSet::Cnot}) {
    const Circuit d = decompose_native(c, native);
    long long tqgs = 0;
    for (const Gate& g : d.gates)
      if (g.is_two_qubit()) ++tqgs;
    CHECK(tqgs == 3);
  }
}

TEST_CASE("native decomposition rejects foreign two-qubit kinds") {
  Circuit c(2);
  c.add(Gate::iswap(0, 1));
  CHECK_THROWS_AS(decompose_native(c, NativeGateSet::CZFixed),
                  std::invalid_argument);
}

TEST_CASE("resonator wrap adds exactly two TQGs and stays diagonal on the hub") {
  // rotationally-optimized noninteracting step: only ZZ interactions remain
  SpinSystem sys = SpinSystem::make(1, 4);
  sys.bz = 0.0446;
  for (int k = 0; k < 4; ++k) sys.hyperfine[0][k] = Vec3(0.2, 0.1, 0.3 + 0.05 * k);
  const RotationalOptimization rot = rotational_optimize(sys);
  Drive drive;
  drive.omega = 2.5;
  const Circuit step = trotter_step(rot.system, drive, 0.4);
  const RoutedCircuit routed = route(step, Topology::star(5), false);
  const GateCounts before = count_gates(routed.circuit);
  CHECK(before.n_tqg == 4);  // n - 1 diagonal interactions

  const Circuit wrapped = resonator_protocol_wrap(routed.circuit);
  CHECK(wrapped.n_qubits == 6);
  const GateCounts after = count_gates(wrapped);
  CHECK(after.n_tqg == before.n_tqg + 2);
  int iswaps = 0, hub_diagonal = 0;
  for (const Gate& g : wrapped.gates) {
    if (g.kind == GateKind::ISwap) ++iswaps;
    if (g.is_two_qubit() && g.kind != GateKind::ISwap) {
      CHECK((g.qubits[0] == 5 || g.qubits[1] == 5));  // resonator is the hub now
      CHECK(g.is_diagonal());
      ++hub_diagonal;
    }
  }
  CHECK(iswaps == 2);
  CHECK(hub_diagonal == 4);
}

TEST_CASE("iSWAP wrapping matches Swap wrapping on diagonal observables") {
  Rng rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    Circuit body(3);
    body.add(Gate::rxy(0, 0.3, rng.uniform(0, kPi)));  // prologue on the hub
    body.add(Gate::rxy(1, 0.1, rng.uniform(0, kPi)));
    body.add(Gate::uzz(0, 1, rng.uniform(-1, 1)));
    body.add(Gate::rxy(2, 0.0, rng.uniform(0, kPi)));
    body.add(Gate::uzz(0, 2, rng.uniform(-1, 1)));
    body.add(Gate::rz(0, rng.uniform(-1, 1)));
    body.add(Gate::cz(0, 1, rng.uniform(-1, 1)));
    body.add(Gate::rxy(0, 0.4, rng.uniform(0, kPi)));  // epilogue on the hub

    const Circuit iswap_wrapped = resonator_protocol_wrap(body);

    // the theoretically straightforward variant carries the hub state with
    // full Swaps instead
    Circuit swap_wrapped(4);
    std::size_t i = 0;
    for (; i < iswap_wrapped.gates.size(); ++i) {
      const Gate& g = iswap_wrapped.gates[i];
      if (g.kind == GateKind::ISwap) {
        swap_wrapped.add(Gate::swap(g.qubits[0], g.qubits[1]));
      } else if (g.kind == GateKind::Rz && g.qubits[0] != 1 && g.p0 == kPi) {
        continue;  // the inverse-iSWAP phase correction
      } else {
        swap_wrapped.add(g);
      }
    }

    RunOptions opts;
    opts.seed = 7;
    opts.init.method = InitMethod::Pure;
    const RunResult a = run(iswap_wrapped, std::nullopt, opts);
    const RunResult b = run(swap_wrapped, std::nullopt, opts);
    const RunResult plain = run(body, std::nullopt, opts);
    for (int q = 0; q < 3; ++q) {
      CHECK(a.final_exp.z[q] == doctest::Approx(b.final_exp.z[q]).epsilon(1e-10));
      CHECK(a.final_exp.z[q] ==
            doctest::Approx(plain.final_exp.z[q]).epsilon(1e-10));
    }
  }
}

TEST_CASE("resonator wrap rejects non-diagonal hub gates in the body") {
  Circuit bad(3);
  bad.add(Gate::uzz(0, 1, 0.3));
  bad.add(Gate::rxy(0, 0.0, 1.0));  // between two hub TQGs
  bad.add(Gate::uzz(0, 2, 0.3));
  CHECK_THROWS_AS(resonator_protocol_wrap(bad), std::invalid_argument);

  Circuit bad2(3);
  bad2.add(Gate::swap(0, 1));  // non-diagonal hub TQG
  bad2.add(Gate::uzz(0, 2, 0.3));
  CHECK_THROWS_AS(resonator_protocol_wrap(bad2), std::invalid_argument);
}
