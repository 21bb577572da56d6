// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "nanonmr/circuit.hpp"
#include "nanonmr/rng.hpp"
#include "nanonmr/spin_system.hpp"
#include "nanonmr/synth.hpp"

namespace nanonmr {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Dense density matrix; memory is 2^(2n) complex entries, n <= 10 supported.
struct DensityMatrix {
  int n_qubits = 0;
  Matrix rho;

  static DensityMatrix zero_state(int n_qubits);
  static DensityMatrix from_pure(int n_qubits, const Eigen::VectorXcd& psi);

  double trace_real() const;
  // throws if Hermiticity/trace/positivity tolerances are violated
  void check_valid(double eig_floor = -1e-9) const;
};

enum class DephasingMode { Markovian, OneOverF };

struct NoiseModel {
  double t1 = 60.0;           // us
  double t2 = 60.0;           // us
  double eps_sqg = 1e-4;      // depolarizing probability per physical SQG
  double eps_tqg = 2e-3;      // per native TQG (a Swap pays it three times)
  double tau_sqg = 0.06;      // us
  double tau_tqg = 0.027;     // us
  DephasingMode dephasing = DephasingMode::Markovian;
  // 1/f dephasing parameters (OneOverF only): Gamma(t) is integrated over
  // [omega_ir, omega_uv] with amplitude calibrated so Gamma(t2) = 1.
  double beta = 1.0;          // environment inverse temperature, 1/(rad/us)
  double omega_ir = 1e-3;     // rad/us
  double omega_uv = 1e3;      // rad/us

  GateDurations durations() const { return GateDurations{tau_sqg, tau_tqg}; }
  void validate() const;

  static NoiseModel figure_defaults();  // T1=T2=60us, eps 2e-3/1e-4, 60/27ns
};

// Rabi-frequency fluctuation of the drive, an Ornstein-Uhlenbeck process.
struct OUParams {
  double tau = 500.0;  // correlation time, us
  double c = 4e-7;     // diffusion constant, 1/us

  double stationary_variance() const { return c * tau / 2.0; }
};

// Exact-discretization OU update over a step dt (us).
double ou_step(double x, const OUParams& p, double dt, Rng& rng);

// A completely positive trace-preserving channel as Kraus operators.
struct KrausSet {
  std::vector<Matrix> ops;

  // || sum K^dag K - I ||_inf; the CPTP defect
  double cptp_defect() const;
};

enum class ChannelKind { AmpDamp, Dephase, Depolarize1Q, Depolarize2Q, Reset };

// Kraus operators of the hardware noise channels. AmpDamp/Dephase take the
// elapsed time in us, Depolarize1Q/2Q the error probability (param p in
// [0,1]); Reset ignores the parameter.
KrausSet noise_channel(ChannelKind kind, double param, const NoiseModel& model);

// Nuclear initial-state preparation methods for the effective fully-mixed
// state; Pure prepares a computational basis state.
enum class InitMethod { RandomX, RandomPhase, Pure };

struct InitSpec {
  InitMethod method = InitMethod::RandomX;
  std::uint64_t basis_state = 0;  // Pure only, bits indexed by qubit
  // qubits the method randomizes (the nuclei); defaults to all but qubit 0
  std::vector<int> random_qubits;
};

// One sampled initial state (or the exact basis state for Pure).
DensityMatrix prepare_initial(int n_qubits, const InitSpec& spec, Rng& rng);

struct Expectations {
  std::vector<double> x, y, z;  // per qubit
};

struct RunOptions {
  std::uint64_t seed = 0;
  std::optional<OUParams> ou;
  // number of initial-state samples; 0 = exhaustive over the random_x
  // patterns (requires <= 5 randomized qubits)
  int samples = 0;
  InitSpec init;
};

struct RunResult {
  Expectations final_exp;
  // snapshot at every Barrier, in order; the pre-reset cycle boundaries
  std::vector<Expectations> at_barriers;
};

// Execute a circuit, moment by moment: gate unitaries, then per-gate
// depolarizing error, then amplitude damping and dephasing on every qubit
// for the moment duration (idle qubits included). Reset applies the reset
// channel. Passing no noise model runs ideal dynamics. Results are averaged
// over the initial-state samples; identical seeds give identical output.
RunResult run(const Circuit& c, const std::optional<NoiseModel>& noise,
              const RunOptions& opts);

// Unitary of a (noise-free) circuit; for small-n oracle comparisons.
Matrix circuit_unitary(const Circuit& c);

// Dense Hamiltonian of the system, built directly from the interaction-form
// definition (ladder operators, I = sigma/2), independent of the Pauli
// decomposition path. include_drive adds the continuous drive term.
Matrix hamiltonian_matrix(const SpinSystem& sys, const Drive* drive);

// exp(-i t H) via eigendecomposition; the oracle for Trotter error and
// resonance tests. Throws above 6 qubits.
Matrix exact_propagator(const SpinSystem& sys, const Drive* drive, double t);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

double trace_distance(const Matrix& a, const Matrix& b);

// spectral-norm distance up to global phase; for unitary comparisons
double phase_distance(const Matrix& a, const Matrix& b);

// In-place application helpers (exposed for tests and analysis).
void apply_unitary(DensityMatrix& dm, const Matrix& u, const std::vector<int>& qubits);
void apply_kraus(DensityMatrix& dm, const KrausSet& ks, const std::vector<int>& qubits);

}  // namespace nanonmr
