// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nanonmr/constants.hpp"

namespace nanonmr {

namespace {

const Complex kI(0.0, 1.0);

long long dim_of(int n_qubits) { return 1LL << n_qubits; }

int bit_mask(int n_qubits, int qubit) { return 1 << (n_qubits - 1 - qubit); }

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}
Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

// rho <- (U at qubits) rho for a 2x2 operator
void left_mul_1q(Matrix& rho, const Eigen::Matrix2cd& u, int mask) {
  const long long dim = rho.rows();
  for (long long col = 0; col < dim; ++col) {
    for (long long i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const long long i1 = i | mask;
      const Complex a = rho(i, col), b = rho(i1, col);
      rho(i, col) = u(0, 0) * a + u(0, 1) * b;
      rho(i1, col) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

// rho <- rho (U at qubits)^dag
void right_mul_dag_1q(Matrix& rho, const Eigen::Matrix2cd& u, int mask) {
  const long long dim = rho.rows();
  for (long long j = 0; j < dim; ++j) {
    if (j & mask) continue;
    const long long j1 = j | mask;
    for (long long r = 0; r < dim; ++r) {
      const Complex a = rho(r, j), b = rho(r, j1);
      rho(r, j) = a * std::conj(u(0, 0)) + b * std::conj(u(0, 1));
      rho(r, j1) = a * std::conj(u(1, 0)) + b * std::conj(u(1, 1));
    }
  }
}

void left_mul_2q(Matrix& rho, const Eigen::Matrix4cd& u, int mask_hi, int mask_lo) {
  const long long dim = rho.rows();
  const long long offsets[4] = {0, mask_lo, mask_hi, mask_hi | mask_lo};
  for (long long col = 0; col < dim; ++col) {
    for (long long i = 0; i < dim; ++i) {
      if (i & (mask_hi | mask_lo)) continue;
      Complex v[4];
      for (int k = 0; k < 4; ++k) v[k] = rho(i | offsets[k], col);
      for (int r = 0; r < 4; ++r) {
        Complex acc(0.0, 0.0);
        for (int k = 0; k < 4; ++k) acc += u(r, k) * v[k];
        rho(i | offsets[r], col) = acc;
      }
    }
  }
}

void right_mul_dag_2q(Matrix& rho, const Eigen::Matrix4cd& u, int mask_hi,
                      int mask_lo) {
  const long long dim = rho.rows();
  const long long offsets[4] = {0, mask_lo, mask_hi, mask_hi | mask_lo};
  for (long long j = 0; j < dim; ++j) {
    if (j & (mask_hi | mask_lo)) continue;
    for (long long r = 0; r < dim; ++r) {
      Complex v[4];
      for (int k = 0; k < 4; ++k) v[k] = rho(r, j | offsets[k]);
      for (int cc = 0; cc < 4; ++cc) {
        Complex acc(0.0, 0.0);
        for (int k = 0; k < 4; ++k) acc += v[k] * std::conj(u(cc, k));
        rho(r, j | offsets[cc]) = acc;
      }
    }
  }
}

}  // namespace

DensityMatrix DensityMatrix::zero_state(int n_qubits) {
  DensityMatrix dm;
  dm.n_qubits = n_qubits;
  dm.rho = Matrix::Zero(dim_of(n_qubits), dim_of(n_qubits));
  dm.rho(0, 0) = 1.0;
  return dm;
}

DensityMatrix DensityMatrix::from_pure(int n_qubits, const Eigen::VectorXcd& psi) {
  if (psi.size() != dim_of(n_qubits)) {
    throw std::invalid_argument("state vector dimension mismatch");
  }
  DensityMatrix dm;
  dm.n_qubits = n_qubits;
  dm.rho = psi * psi.adjoint();
  return dm;
}

double DensityMatrix::trace_real() const { return rho.trace().real(); }

void DensityMatrix::check_valid(double eig_floor) const {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::runtime_error("density matrix is not Hermitian");
  }
  if (std::abs(trace_real() - 1.0) > 1e-10) {
    throw std::runtime_error("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < eig_floor) {
    throw std::runtime_error("density matrix has a negative eigenvalue");
  }
}

void NoiseModel::validate() const {
  if (t1 <= 0.0 || t2 <= 0.0) throw std::invalid_argument("T1, T2 must be > 0");
  if (eps_sqg < 0.0 || eps_sqg > 1.0 || eps_tqg < 0.0 || eps_tqg > 1.0) {
    throw std::invalid_argument("gate errors must lie in [0, 1]");
  }
  if (tau_sqg < 0.0 || tau_tqg < 0.0) {
    throw std::invalid_argument("gate durations must be >= 0");
  }
}

NoiseModel NoiseModel::figure_defaults() {
  NoiseModel m;
  m.t1 = 60.0;
  m.t2 = 60.0;
  m.eps_tqg = 2e-3;
  m.eps_sqg = 1e-4;  // one order of magnitude below the TQG error
  m.tau_sqg = 0.06;
  m.tau_tqg = 0.027;
  return m;
}

double ou_step(double x, const OUParams& p, double dt, Rng& rng) {
  if (p.tau <= 0.0) throw std::invalid_argument("OU correlation time must be > 0");
  if (p.c < 0.0) throw std::invalid_argument("OU diffusion constant must be >= 0");
  if (dt == 0.0) return x;
  const double decay = std::exp(-dt / p.tau);
  const double sigma = std::sqrt(p.c * p.tau / 2.0 * (1.0 - decay * decay));
  return x * decay + sigma * rng.normal();
}

double KrausSet::cptp_defect() const {
  if (ops.empty()) return 1.0;
  Matrix acc = Matrix::Zero(ops[0].rows(), ops[0].cols());
  for (const Matrix& k : ops) acc += k.adjoint() * k;
  return (acc - Matrix::Identity(acc.rows(), acc.cols())).cwiseAbs().maxCoeff();
}

namespace {

// Gamma(t) for the 1/f dephasing mode, up to the overall amplitude:
// (t^2/2) Int_ir^uv dw (1/w) coth(beta w / 2) sinc^2(w t / 2)
double one_over_f_integral(double t, const NoiseModel& m) {
  if (t <= 0.0) return 0.0;
  const int n_steps = 256;  // Simpson on a log grid
  const double lo = std::log(m.omega_ir), hi = std::log(m.omega_uv);
  const double h = (hi - lo) / n_steps;
  auto integrand = [&](double logw) {
    const double w = std::exp(logw);
    const double x = w * t / 2.0;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    const double arg = m.beta * w / 2.0;
    const double coth = arg > 20.0 ? 1.0 : std::cosh(arg) / std::sinh(arg);
    // dw/w = d(log w), so the 1/f weight cancels into the measure
    return coth * sinc * sinc;
  };
  double acc = integrand(lo) + integrand(hi);
  for (int i = 1; i < n_steps; ++i) {
    acc += integrand(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return t * t / 2.0 * acc * h / 3.0;
}

double dephasing_probability(double t, const NoiseModel& m) {
  if (m.dephasing == DephasingMode::Markovian) {
    return 1.0 - std::exp(-t / m.t2);
  }
  // amplitude calibrated so Gamma(T2) = 1
  struct Key {
    double beta, ir, uv, t2;
    bool operator<(const Key& o) const {
      return std::tie(beta, ir, uv, t2) < std::tie(o.beta, o.ir, o.uv, o.t2);
    }
  };
  thread_local std::map<Key, double> cache;
  const Key key{m.beta, m.omega_ir, m.omega_uv, m.t2};
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, one_over_f_integral(m.t2, m)).first;
  }
  const double gamma = one_over_f_integral(t, m) / it->second;
  return 1.0 - std::exp(-gamma);
}

}  // namespace

KrausSet noise_channel(ChannelKind kind, double param, const NoiseModel& model) {
  model.validate();
  KrausSet ks;
  switch (kind) {
    case ChannelKind::AmpDamp: {
      if (param < 0.0) throw std::invalid_argument("time must be >= 0");
      const double p = 1.0 - std::exp(-param / model.t1);
      Matrix k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
      k1(0, 0) = 1.0;
      k1(1, 1) = std::sqrt(1.0 - p);
      k2(0, 1) = std::sqrt(p);
      ks.ops = {k1, k2};
      return ks;
    }
    case ChannelKind::Dephase: {
      if (param < 0.0) throw std::invalid_argument("time must be >= 0");
      const double p = dephasing_probability(param, model);
      Matrix k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
      k1(0, 0) = 1.0;
      k1(1, 1) = std::sqrt(1.0 - p);
      k2(1, 1) = std::sqrt(p);
      ks.ops = {k1, k2};
      return ks;
    }
    case ChannelKind::Depolarize1Q: {
      if (param < 0.0 || param > 1.0) {
        throw std::invalid_argument("depolarizing probability must be in [0, 1]");
      }
      ks.ops.push_back(std::sqrt(1.0 - param) * Matrix::Identity(2, 2));
      if (param > 0.0) {
        const double w = std::sqrt(param / 3.0);
        ks.ops.push_back(w * pauli_x());
        ks.ops.push_back(w * pauli_y());
        ks.ops.push_back(w * pauli_z());
      }
      return ks;
    }
    case ChannelKind::Depolarize2Q: {
      if (param < 0.0 || param > 1.0) {
        throw std::invalid_argument("depolarizing probability must be in [0, 1]");
      }
      const Eigen::Matrix2cd paulis[4] = {Eigen::Matrix2cd::Identity(), pauli_x(),
                                          pauli_y(), pauli_z()};
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const double w =
              (a == 0 && b == 0) ? std::sqrt(1.0 - param) : std::sqrt(param / 15.0);
          if (w == 0.0) continue;
          Matrix k(4, 4);
          for (int r = 0; r < 2; ++r)
            for (int cc = 0; cc < 2; ++cc)
              k.block(r * 2, cc * 2, 2, 2) = paulis[a](r, cc) * paulis[b];
          ks.ops.push_back(w * k);
        }
      }
      return ks;
    }
    case ChannelKind::Reset: {
      Matrix k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
      k1(0, 0) = 1.0;
      k2(0, 1) = 1.0;
      ks.ops = {k1, k2};
      return ks;
    }
  }
  throw std::invalid_argument("unknown channel kind");
}

void apply_unitary(DensityMatrix& dm, const Matrix& u, const std::vector<int>& qubits) {
  if (qubits.size() == 1) {
    const int mask = bit_mask(dm.n_qubits, qubits[0]);
    const Eigen::Matrix2cd u2 = u;
    left_mul_1q(dm.rho, u2, mask);
    right_mul_dag_1q(dm.rho, u2, mask);
    return;
  }
  if (qubits.size() == 2) {
    const int mask_hi = bit_mask(dm.n_qubits, qubits[0]);
    const int mask_lo = bit_mask(dm.n_qubits, qubits[1]);
    const Eigen::Matrix4cd u4 = u;
    left_mul_2q(dm.rho, u4, mask_hi, mask_lo);
    right_mul_dag_2q(dm.rho, u4, mask_hi, mask_lo);
    return;
  }
  throw std::invalid_argument("apply_unitary supports 1 or 2 qubits");
}

void apply_kraus(DensityMatrix& dm, const KrausSet& ks, const std::vector<int>& qubits) {
  // scratch buffers reused across calls; channel application is the hot loop
  thread_local Matrix acc, work;
  acc.resize(dm.rho.rows(), dm.rho.cols());
  acc.setZero();
  for (const Matrix& k : ks.ops) {
    work = dm.rho;
    if (qubits.size() == 1) {
      const int mask = bit_mask(dm.n_qubits, qubits[0]);
      const Eigen::Matrix2cd k2 = k;
      left_mul_1q(work, k2, mask);
      right_mul_dag_1q(work, k2, mask);
    } else if (qubits.size() == 2) {
      const int hi = bit_mask(dm.n_qubits, qubits[0]);
      const int lo = bit_mask(dm.n_qubits, qubits[1]);
      const Eigen::Matrix4cd k4 = k;
      left_mul_2q(work, k4, hi, lo);
      right_mul_dag_2q(work, k4, hi, lo);
    } else {
      throw std::invalid_argument("apply_kraus supports 1 or 2 qubits");
    }
    acc += work;
  }
  dm.rho.swap(acc);
}

DensityMatrix prepare_initial(int n_qubits, const InitSpec& spec, Rng& rng) {
  std::vector<int> randomized = spec.random_qubits;
  if (randomized.empty()) {
    for (int q = 1; q < n_qubits; ++q) randomized.push_back(q);
  }
  const long long dim = dim_of(n_qubits);
  switch (spec.method) {
    case InitMethod::Pure: {
      long long index = 0;
      for (int q = 0; q < n_qubits; ++q) {
        if ((spec.basis_state >> q) & 1ULL) index |= bit_mask(n_qubits, q);
      }
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
      psi(index) = 1.0;
      return DensityMatrix::from_pure(n_qubits, psi);
    }
    case InitMethod::RandomX: {
      long long index = 0;
      for (int q : randomized) {
        if (rng.bernoulli(0.5)) index |= bit_mask(n_qubits, q);
      }
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
      psi(index) = 1.0;
      return DensityMatrix::from_pure(n_qubits, psi);
    }
    case InitMethod::RandomPhase: {
      // Hadamard then a uniformly random phase on each randomized qubit
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
      psi(0) = 1.0;
      DensityMatrix dm = DensityMatrix::from_pure(n_qubits, psi);
      Eigen::Matrix2cd had;
      had << 1, 1, 1, -1;
      had /= std::sqrt(2.0);
      for (int q : randomized) {
        const double phase = rng.uniform(0.0, kTwoPi);
        Eigen::Matrix2cd pg = Eigen::Matrix2cd::Identity();
        pg(1, 1) = std::exp(kI * phase);
        apply_unitary(dm, pg * had, {q});
      }
      return dm;
    }
  }
  throw std::invalid_argument("unknown init method");
}

namespace {

Expectations measure_all(const DensityMatrix& dm) {
  const int n = dm.n_qubits;
  Expectations e;
  e.x.assign(n, 0.0);
  e.y.assign(n, 0.0);
  e.z.assign(n, 0.0);
  const long long dim = dm.rho.rows();
  for (int q = 0; q < n; ++q) {
    const int mask = bit_mask(n, q);
    double ex = 0.0, ey = 0.0, ez = 0.0;
    for (long long i = 0; i < dim; ++i) {
      const double pd = dm.rho(i, i).real();
      ez += (i & mask) ? -pd : pd;
      if (!(i & mask)) {
        const Complex c = dm.rho(i, i | mask);
        ex += 2.0 * c.real();
        ey += -2.0 * c.imag();
      }
    }
    e.x[q] = ex;
    e.y[q] = ey;
    e.z[q] = ez;
  }
  return e;
}

void accumulate(Expectations& acc, const Expectations& e, double weight) {
  if (acc.x.empty()) {
    acc.x.assign(e.x.size(), 0.0);
    acc.y.assign(e.y.size(), 0.0);
    acc.z.assign(e.z.size(), 0.0);
  }
  for (std::size_t i = 0; i < e.x.size(); ++i) {
    acc.x[i] += weight * e.x[i];
    acc.y[i] += weight * e.y[i];
    acc.z[i] += weight * e.z[i];
  }
}

struct SampleRunner {
  const Circuit& circuit;
  const std::optional<NoiseModel>& noise;
  const RunOptions& opts;
  // composed amp-damp + dephasing channel per distinct moment duration
  mutable std::map<double, KrausSet> idle_cache;

  const KrausSet& idle_channel(double duration) const {
    auto it = idle_cache.find(duration);
    if (it != idle_cache.end()) return it->second;
    const KrausSet damp = noise_channel(ChannelKind::AmpDamp, duration, *noise);
    const KrausSet deph = noise_channel(ChannelKind::Dephase, duration, *noise);
    KrausSet fused;
    for (const Matrix& d : deph.ops)
      for (const Matrix& a : damp.ops) fused.ops.push_back(d * a);
    return idle_cache.emplace(duration, std::move(fused)).first->second;
  }

  RunResult run_one(const DensityMatrix& initial, std::uint64_t sample_seed) const {
    Rng rng(sample_seed);
    DensityMatrix dm = initial;
    KrausSet depol_1q, depol_2q;
    if (noise) {
      depol_1q = noise_channel(ChannelKind::Depolarize1Q, noise->eps_sqg, *noise);
      depol_2q = noise_channel(ChannelKind::Depolarize2Q, noise->eps_tqg, *noise);
    }
    double ou_x = 0.0;
    if (opts.ou) {
      // start in the stationary distribution
      ou_x = std::sqrt(opts.ou->stationary_variance()) * rng.normal();
    }
    RunResult result;
    for (const Moment& moment : circuit.moments) {
      for (int gi : moment.gate_indices) {
        Gate g = circuit.gates[gi];
        if (g.kind == GateKind::Barrier) {
          result.at_barriers.push_back(measure_all(dm));
          continue;
        }
        if (g.kind == GateKind::Reset) {
          static const NoiseModel ideal;
          apply_kraus(dm, noise_channel(ChannelKind::Reset, 0.0, noise ? *noise : ideal),
                      {g.qubits[0]});
          continue;
        }
        if (opts.ou && g.tag != GateTag::None) {
          ou_x = ou_step(ou_x, *opts.ou, g.sim_dt, rng);
          g.p1 *= 1.0 + ou_x;  // effective Rabi frequency (1 + X) Omega
        }
        std::vector<int> qubits(g.qubits.begin(), g.qubits.begin() + g.arity());
        apply_unitary(dm, gate_matrix(g), qubits);
        if (noise) {
          if (g.kind == GateKind::Swap) {
            // a Swap executes as three native TQGs
            for (int rep = 0; rep < 3; ++rep) apply_kraus(dm, depol_2q, qubits);
          } else if (g.is_two_qubit()) {
            apply_kraus(dm, depol_2q, qubits);
          } else if (g.is_physical_sqg()) {
            apply_kraus(dm, depol_1q, qubits);
          }
        }
      }
      if (noise && moment.duration_us > 0.0) {
        const KrausSet& idle = idle_channel(moment.duration_us);
        for (int q = 0; q < dm.n_qubits; ++q) {
          apply_kraus(dm, idle, {q});
        }
      }
    }
    result.final_exp = measure_all(dm);
    return result;
  }
};

}  // namespace

RunResult run(const Circuit& c, const std::optional<NoiseModel>& noise,
              const RunOptions& opts) {
  if (noise) noise->validate();
  const GateDurations durations = noise ? noise->durations() : GateDurations{};
  const Circuit scheduled = c.scheduled() ? c : schedule_moments(c, durations);
  SampleRunner runner{scheduled, noise, opts};

  std::vector<int> randomized = opts.init.random_qubits;
  if (randomized.empty()) {
    for (int q = 1; q < c.n_qubits; ++q) randomized.push_back(q);
  }

  RunResult total;
  std::vector<Expectations> barrier_acc;
  int n_samples = 0;

  auto merge = [&](const RunResult& r, double weight) {
    accumulate(total.final_exp, r.final_exp, weight);
    if (barrier_acc.size() < r.at_barriers.size()) {
      barrier_acc.resize(r.at_barriers.size());
    }
    for (std::size_t b = 0; b < r.at_barriers.size(); ++b) {
      accumulate(barrier_acc[b], r.at_barriers[b], weight);
    }
  };

  if (opts.init.method == InitMethod::Pure) {
    Rng rng(derive_seed(opts.seed, 0));
    merge(runner.run_one(prepare_initial(c.n_qubits, opts.init, rng),
                         derive_seed(opts.seed, 0)),
          1.0);
    n_samples = 1;
  } else if (opts.samples == 0) {
    // exhaustive average over the X-flip patterns
    if (opts.init.method != InitMethod::RandomX) {
      throw std::invalid_argument(
          "exhaustive sampling is defined for the random-X method only");
    }
    const int k = static_cast<int>(randomized.size());
    if (k > 5) {
      throw std::invalid_argument(
          "exhaustive sampling supports at most 5 randomized qubits");
    }
    const long long patterns = 1LL << k;
    for (long long pat = 0; pat < patterns; ++pat) {
      InitSpec spec;
      spec.method = InitMethod::Pure;
      spec.basis_state = 0;
      for (int b = 0; b < k; ++b) {
        if ((pat >> b) & 1) spec.basis_state |= 1ULL << randomized[b];
      }
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(pat)));
      merge(runner.run_one(prepare_initial(c.n_qubits, spec, rng),
                           derive_seed(opts.seed, static_cast<std::uint64_t>(pat))),
            1.0);
      ++n_samples;
    }
  } else {
    for (int s = 0; s < opts.samples; ++s) {
      const std::uint64_t seed = derive_seed(opts.seed, static_cast<std::uint64_t>(s));
      Rng rng(seed);
      InitSpec spec = opts.init;
      spec.random_qubits = randomized;
      merge(runner.run_one(prepare_initial(c.n_qubits, spec, rng), seed), 1.0);
      ++n_samples;
    }
  }

  const double inv = 1.0 / n_samples;
  for (auto* vec : {&total.final_exp.x, &total.final_exp.y, &total.final_exp.z}) {
    for (double& v : *vec) v *= inv;
  }
  for (auto& b : barrier_acc) {
    for (auto* vec : {&b.x, &b.y, &b.z}) {
      for (double& v : *vec) v *= inv;
    }
  }
  total.at_barriers = std::move(barrier_acc);
  return total;
}

Matrix circuit_unitary(const Circuit& c) {
  const long long dim = dim_of(c.n_qubits);
  Matrix u = Matrix::Identity(dim, dim);
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Barrier) continue;
    if (g.kind == GateKind::Reset) {
      throw std::invalid_argument("reset has no unitary");
    }
    const Eigen::MatrixXcd m = gate_matrix(g);
    Matrix full = Matrix::Identity(dim, dim);
    if (g.arity() == 1) {
      const int mask = bit_mask(c.n_qubits, g.qubits[0]);
      const Eigen::Matrix2cd m2 = m;
      left_mul_1q(full, m2, mask);
    } else {
      const int hi = bit_mask(c.n_qubits, g.qubits[0]);
      const int lo = bit_mask(c.n_qubits, g.qubits[1]);
      const Eigen::Matrix4cd m4 = m;
      left_mul_2q(full, m4, hi, lo);
    }
    u = full * u;
  }
  return u;
}

namespace {

Matrix op_at(int n_qubits, int qubit, const Eigen::Matrix2cd& m) {
  // qubit 0 is the most significant tensor factor
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::Matrix2cd factor =
        q == qubit ? m : Eigen::Matrix2cd::Identity();
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (long long r = 0; r < out.rows(); ++r)
      for (long long cc = 0; cc < out.cols(); ++cc)
        next.block(r * 2, cc * 2, 2, 2) = out(r, cc) * factor;
    out.swap(next);
  }
  return out;
}

}  // namespace

Matrix hamiltonian_matrix(const SpinSystem& sys, const Drive* drive) {
  sys.validate();
  const int m = sys.n_nv;
  const int n_total = sys.total_qubits();
  const long long dim = dim_of(n_total);
  Matrix h = Matrix::Zero(dim, dim);

  const Eigen::Matrix2cd sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  Eigen::Matrix2cd i_plus = Eigen::Matrix2cd::Zero();   // |0><1|
  i_plus(0, 1) = 1.0;
  Eigen::Matrix2cd i_minus = Eigen::Matrix2cd::Zero();  // |1><0|
  i_minus(1, 0) = 1.0;

  for (int j = 0; j < m; ++j) {
    h += sys.delta[j] * op_at(n_total, j, sz);
  }
  for (int k = 0; k < sys.n_nuclei; ++k) {
    const Vec3 w = sys.omega_c(k);
    const int q = m + k;
    h -= 0.5 * (w.x() * op_at(n_total, q, sx) + w.y() * op_at(n_total, q, sy) +
                w.z() * op_at(n_total, q, sz));
  }
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < sys.n_nuclei; ++k) {
      const Vec3 a = sys.hyperfine[j][k];
      if (a.norm() == 0.0) continue;
      const int q = m + k;
      const Matrix zj = op_at(n_total, j, sz);
      h += 0.25 * zj *
           (a.x() * op_at(n_total, q, sx) + a.y() * op_at(n_total, q, sy) +
            a.z() * op_at(n_total, q, sz));
    }
  }
  for (int k1 = 0; k1 < sys.n_nuclei; ++k1) {
    for (int k2 = k1 + 1; k2 < sys.n_nuclei; ++k2) {
      const double g = sys.g_between(k1, k2);
      if (g == 0.0) continue;
      const int a = m + k1, b = m + k2;
      const Matrix zz = op_at(n_total, a, 0.5 * sz) * op_at(n_total, b, 0.5 * sz);
      const Matrix flip = op_at(n_total, a, i_plus) * op_at(n_total, b, i_minus) +
                          op_at(n_total, a, i_minus) * op_at(n_total, b, i_plus);
      h += g * (zz - 0.25 * flip);
    }
  }
  for (int j1 = 0; j1 < m; ++j1) {
    for (int j2 = j1 + 1; j2 < m; ++j2) {
      const double hh = sys.h_between(j1, j2);
      if (hh == 0.0) continue;
      const Matrix zz = op_at(n_total, j1, sz) * op_at(n_total, j2, sz);
      // sigma_pm = (X pm iY)/2
      const Eigen::Matrix2cd sp = 0.5 * (sx + kI * sy);
      const Eigen::Matrix2cd sm = 0.5 * (sx - kI * sy);
      const Matrix flip = op_at(n_total, j1, sp) * op_at(n_total, j2, sm) +
                          op_at(n_total, j1, sm) * op_at(n_total, j2, sp);
      h += hh * (zz - 2.0 * flip);
    }
  }
  if (drive && drive->mode == DriveMode::Continuous && drive->omega != 0.0) {
    Eigen::Matrix2cd sigma_phi = Eigen::Matrix2cd::Zero();
    sigma_phi(0, 1) = std::exp(kI * drive->phi);
    sigma_phi(1, 0) = std::exp(-kI * drive->phi);
    for (int j = 0; j < m; ++j) {
      h += 0.5 * drive->omega * op_at(n_total, j, sigma_phi);
    }
  }
  return h;
}

Matrix exact_propagator(const SpinSystem& sys, const Drive* drive, double t) {
  if (sys.total_qubits() > 6) {
    throw std::invalid_argument("exact propagator supports at most 6 qubits");
  }
  const Matrix h = hamiltonian_matrix(sys, drive);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd evals = es.eigenvalues();
  Eigen::VectorXcd phases(evals.size());
  for (long long i = 0; i < evals.size(); ++i) {
    phases(i) = std::exp(-kI * evals(i) * t);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

Matrix psd_sqrt(const Matrix& a, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const Eigen::VectorXd evals = es.eigenvalues();
  if (evals.minCoeff() < floor) {
    throw std::invalid_argument("matrix is not positive semidefinite");
  }
  Eigen::VectorXd root(evals.size());
  for (long long i = 0; i < evals.size(); ++i) {
    root(i) = std::sqrt(std::max(0.0, evals(i)));
  }
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.rho.rows() != sigma.rho.rows()) {
    throw std::invalid_argument("fidelity needs equal dimensions");
  }
  const Matrix root = psd_sqrt(rho.rho, -1e-9);
  const Matrix inner = root * sigma.rho * root;
  Eigen::SelfAdjointEigenSolver<Matrix> es((inner + inner.adjoint()) / 2.0);
  double acc = 0.0;
  for (long long i = 0; i < es.eigenvalues().size(); ++i) {
    acc += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  }
  const double f = acc * acc;
  return std::clamp(f, 0.0, 1.0);
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> es((d + d.adjoint()) / 2.0);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double phase_distance(const Matrix& a, const Matrix& b) {
  const Complex tr = (a.adjoint() * b).trace();
  Complex phase(1.0, 0.0);
  if (std::abs(tr) > 1e-14) phase = tr / std::abs(tr);
  const Matrix d = a * phase - b;
  Eigen::JacobiSVD<Matrix> svd(d);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace nanonmr
