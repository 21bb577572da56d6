// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/synth.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "nanonmr/constants.hpp"
#include "nanonmr/rng.hpp"

namespace nanonmr {

double Drive::tau() const {
  if (omega <= 0.0) throw std::invalid_argument("pulsed drive needs omega > 0");
  return static_cast<double>(harmonic) * kPi / omega;
}

void Drive::validate() const {
  if (mode == DriveMode::Continuous) {
    if (omega < 0.0) throw std::invalid_argument("Rabi frequency must be >= 0");
  } else {
    if (omega <= 0.0) throw std::invalid_argument("pulse target frequency must be > 0");
    if (harmonic < 1) throw std::invalid_argument("harmonic must be >= 1");
    if (n_blocks < 1) throw std::invalid_argument("n_blocks must be >= 1");
    if (steps_per_interval < 1) {
      throw std::invalid_argument("steps_per_interval must be >= 1");
    }
    if (pattern.empty()) throw std::invalid_argument("empty pulse pattern");
    for (char c : pattern) {
      if (c != 'X' && c != 'Y') {
        throw std::invalid_argument("pulse pattern letters must be X or Y");
      }
    }
  }
}

void TrotterPlan::validate() const {
  if (t_final <= 0.0) throw std::invalid_argument("t_final must be > 0");
  if (steps < 1) throw std::invalid_argument("Trotter steps must be >= 1");
  if (cycles < 0) throw std::invalid_argument("cycles must be >= 0");
  if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
}

std::array<double, 3> zyz_decompose(const Eigen::Matrix2cd& u) {
  const double unitarity =
      (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10) {
    throw std::invalid_argument("zyz_decompose: input is not unitary");
  }
  const std::complex<double> det = u.determinant();
  const std::complex<double> root =
      std::exp(std::complex<double>(0.0, 0.5 * std::arg(det)));
  const Eigen::Matrix2cd v = u / root;  // SU(2) up to sign

  const double a0 = std::abs(v(0, 0));
  const double a1 = std::abs(v(1, 0));
  const double gamma = 2.0 * std::atan2(a1, a0);
  double beta = 0.0, delta = 0.0;
  constexpr double kTiny = 1e-13;
  if (a1 <= kTiny) {
    // diagonal: canonical branch delta = 0
    beta = -2.0 * std::arg(v(0, 0));
  } else if (a0 <= kTiny) {
    beta = 2.0 * std::arg(v(1, 0));
  } else {
    const double sum = -2.0 * std::arg(v(0, 0));
    const double diff = 2.0 * std::arg(v(1, 0));
    beta = 0.5 * (sum + diff);
    delta = 0.5 * (sum - diff);
  }
  return {beta, gamma, delta};
}

namespace {

// exp(-i (cx X + cy Y + cz Z)) as a matrix
Eigen::Matrix2cd axis_exponential(double cx, double cy, double cz) {
  const double alpha = std::sqrt(cx * cx + cy * cy + cz * cz);
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  if (alpha == 0.0) return m;
  const std::complex<double> i(0.0, 1.0);
  const double c = std::cos(alpha), s = std::sin(alpha) / alpha;
  m(0, 0) = c - i * s * cz;
  m(0, 1) = -i * s * (cx - i * cy);
  m(1, 0) = -i * s * (cx + i * cy);
  m(1, 1) = c + i * s * cz;
  return m;
}

// Append exp(-i theta P_a P_b) (or a single-qubit exponential) using UZZ plus
// basis-change rotations. X is expressed through Ry(pi/2) pairs, Y through
// Rx(-pi/2) pairs, on the carrying qubit only.
void emit_pauli_exponential(Circuit& c, int qa, char la, int qb, char lb,
                            double theta) {
  if (qb < 0) {
    switch (la) {
      case 'X': c.add(Gate::rxy(qa, 0.0, 2.0 * theta)); return;
      case 'Y': c.add(Gate::rxy(qa, kPi / 2.0, 2.0 * theta)); return;
      case 'Z': c.add(Gate::rz(qa, 2.0 * theta)); return;
      default: throw std::invalid_argument("bad Pauli letter");
    }
  }
  auto pre = [&](int q, char l) {
    if (l == 'X') c.add(Gate::rxy(q, kPi / 2.0, -kPi / 2.0));
    else if (l == 'Y') c.add(Gate::rxy(q, 0.0, kPi / 2.0));
  };
  auto post = [&](int q, char l) {
    if (l == 'X') c.add(Gate::rxy(q, kPi / 2.0, kPi / 2.0));
    else if (l == 'Y') c.add(Gate::rxy(q, 0.0, -kPi / 2.0));
  };
  pre(qa, la);
  pre(qb, lb);
  c.add(Gate::uzz(qa, qb, theta));
  post(qb, lb);
  post(qa, la);
}

struct TermTriple {
  int qa, qb;           // qa carries the hub/NV role when present
  char types[3];        // letters on qb (NV-nucleus) or both (symmetric pairs)
  double coeffs[3];
  bool nv_pair;         // NV-nucleus term: letter acts on qb, Z on qa
};

// Structural two-qubit term groups, one triple per coupled pair.
std::vector<TermTriple> collect_triples(const SpinSystem& sys, TermOrder order) {
  const int m = sys.n_nv;
  const int n = sys.n_nuclei;
  std::vector<TermTriple> nv_terms, nn_terms, hh_terms;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < n; ++k) {
      const Vec3 a = sys.hyperfine[j][k];
      if (a.norm() == 0.0) continue;
      TermTriple t;
      t.qa = j;
      t.qb = m + k;
      t.types[0] = 'X'; t.types[1] = 'Y'; t.types[2] = 'Z';
      t.coeffs[0] = 0.25 * a.x();
      t.coeffs[1] = 0.25 * a.y();
      t.coeffs[2] = 0.25 * a.z();
      t.nv_pair = true;
      nv_terms.push_back(t);
    }
  }
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1 + 1; k2 < n; ++k2) {
      const double g = sys.g_between(k1, k2);
      if (g == 0.0) continue;
      TermTriple t;
      t.qa = m + k1;
      t.qb = m + k2;
      t.types[0] = 'Z'; t.types[1] = 'X'; t.types[2] = 'Y';
      t.coeffs[0] = 0.25 * g;
      t.coeffs[1] = -0.125 * g;
      t.coeffs[2] = -0.125 * g;
      t.nv_pair = false;
      nn_terms.push_back(t);
    }
  }
  for (int j1 = 0; j1 < m; ++j1) {
    for (int j2 = j1 + 1; j2 < m; ++j2) {
      const double h = sys.h_between(j1, j2);
      if (h == 0.0) continue;
      TermTriple t;
      t.qa = j1;
      t.qb = j2;
      t.types[0] = 'Z'; t.types[1] = 'X'; t.types[2] = 'Y';
      t.coeffs[0] = h;
      t.coeffs[1] = -h;
      t.coeffs[2] = -h;
      t.nv_pair = false;
      hh_terms.push_back(t);
    }
  }

  std::vector<TermTriple> out;
  if (order == TermOrder::OddEven) {
    auto find_pair = [&](int a, int b) -> const TermTriple* {
      for (const auto& t : nv_terms)
        if ((t.qa == a && t.qb == b) || (t.qa == b && t.qb == a)) return &t;
      for (const auto& t : nn_terms)
        if ((t.qa == a && t.qb == b) || (t.qa == b && t.qb == a)) return &t;
      for (const auto& t : hh_terms)
        if ((t.qa == a && t.qb == b) || (t.qa == b && t.qb == a)) return &t;
      return nullptr;
    };
    for (const auto& [a, b] : odd_even_pair_schedule(m + n)) {
      if (const TermTriple* t = find_pair(a, b)) out.push_back(*t);
    }
    return out;
  }
  // Sweep and HubGrouped share the same triple list; the emission layout
  // differs (per-type sweeps vs per-pair groups).
  out = nv_terms;
  out.insert(out.end(), nn_terms.begin(), nn_terms.end());
  out.insert(out.end(), hh_terms.begin(), hh_terms.end());
  return out;
}

using Block = std::function<void(Circuit&, double)>;

std::vector<Block> step_blocks(const SpinSystem& sys, const Drive& drive,
                               TermOrder order) {
  const int m = sys.n_nv;
  const int n = sys.n_nuclei;
  std::vector<Block> blocks;

  // single-qubit part: NV drive and detuning, nuclear Larmor/hyperfine means
  for (int j = 0; j < m; ++j) {
    if (drive.mode == DriveMode::Continuous && drive.omega != 0.0) {
      const double omega = drive.omega, phi = drive.phi;
      blocks.push_back([j, omega, phi](Circuit& c, double dt) {
        Gate g = Gate::rxy(j, -phi, omega * dt);
        g.tag = GateTag::Drive;
        g.sim_dt = dt;
        c.add(g);
      });
    }
    if (sys.delta[j] != 0.0) {
      const double delta = sys.delta[j];
      blocks.push_back([j, delta](Circuit& c, double dt) {
        c.add(Gate::rz(j, 2.0 * delta * dt));
      });
    }
  }
  for (int k = 0; k < n; ++k) {
    const Vec3 w = sys.omega_c(k);
    if (w.norm() == 0.0) continue;
    const int q = m + k;
    if (w.x() == 0.0 && w.y() == 0.0) {
      blocks.push_back([q, w](Circuit& c, double dt) {
        c.add(Gate::rz(q, -w.z() * dt));
      });
    } else {
      blocks.push_back([q, w](Circuit& c, double dt) {
        const Eigen::Matrix2cd u = axis_exponential(
            -0.5 * w.x() * dt, -0.5 * w.y() * dt, -0.5 * w.z() * dt);
        const auto [beta, gamma, delta] = zyz_decompose(u);
        c.add(Gate::rz(q, delta));
        c.add(Gate::rxy(q, kPi / 2.0, gamma));
        c.add(Gate::rz(q, beta));
      });
    }
  }

  // term slots with an exactly-zero coefficient are dropped; this is what
  // makes the rotated frame save its two-qubit gates
  const std::vector<TermTriple> triples = collect_triples(sys, order);
  auto emit_slot = [](Circuit& c, const TermTriple& t, int slot, double dt) {
    if (t.nv_pair) {
      emit_pauli_exponential(c, t.qa, 'Z', t.qb, t.types[slot],
                             t.coeffs[slot] * dt);
    } else {
      emit_pauli_exponential(c, t.qa, t.types[slot], t.qb, t.types[slot],
                             t.coeffs[slot] * dt);
    }
  };
  if (order == TermOrder::Sweep) {
    // one block per term, swept by type: all XZ, all YZ, all ZZ, then the
    // symmetric-pair ZZ, XX, YY sweeps
    for (bool nv_pass : {true, false}) {
      for (int slot = 0; slot < 3; ++slot) {
        for (const auto& t : triples) {
          if (t.nv_pair != nv_pass || t.coeffs[slot] == 0.0) continue;
          blocks.push_back([t, slot, emit_slot](Circuit& c, double dt) {
            emit_slot(c, t, slot, dt);
          });
        }
      }
    }
  } else {
    for (const auto& t : triples) {
      blocks.push_back([t, emit_slot](Circuit& c, double dt) {
        for (int slot = 0; slot < 3; ++slot) {
          if (t.coeffs[slot] == 0.0) continue;
          emit_slot(c, t, slot, dt);
        }
      });
    }
  }
  return blocks;
}

void emit_step(Circuit& c, const std::vector<Block>& blocks, double dt, int order) {
  if (blocks.empty()) return;
  if (order == 1) {
    for (const auto& b : blocks) b(c, dt);
    return;
  }
  // Strang palindrome: half steps forward, full middle, half steps back
  const std::size_t last = blocks.size() - 1;
  for (std::size_t i = 0; i < last; ++i) blocks[i](c, dt / 2.0);
  blocks[last](c, dt);
  for (std::size_t i = last; i-- > 0;) blocks[i](c, dt / 2.0);
}

void emit_nv_init(Circuit& c, const SpinSystem& sys, NvInit init) {
  for (int j = 0; j < sys.n_nv; ++j) {
    switch (init) {
      case NvInit::Plus: c.add(Gate::rxy(j, kPi / 2.0, kPi / 2.0)); break;
      case NvInit::Minus: c.add(Gate::rxy(j, kPi / 2.0, -kPi / 2.0)); break;
      case NvInit::One: c.add(Gate::x(j)); break;
      case NvInit::Zero: break;
    }
  }
}

void append_circuit(Circuit& dst, const Circuit& src) {
  for (const Gate& g : src.gates) dst.add(g);
}

}  // namespace

Circuit trotter_step(const SpinSystem& sys, const Drive& drive, double dt,
                     int order, TermOrder term_order) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
  sys.validate();
  Circuit c(sys.total_qubits());
  emit_step(c, step_blocks(sys, drive, term_order), dt, order);
  return c;
}

Circuit pulsed_schedule(const SpinSystem& sys, const Drive& drive,
                        const TrotterPlan& plan, TermOrder term_order) {
  drive.validate();
  if (drive.mode != DriveMode::Pulsed) {
    throw std::invalid_argument("pulsed_schedule needs a pulsed drive");
  }
  sys.validate();
  const double tau = drive.tau();
  const int n_qubits = sys.total_qubits();
  Circuit c(n_qubits);
  const std::vector<Block> blocks = step_blocks(sys, drive, term_order);

  auto free_evolution = [&](double duration) {
    if (duration <= 0.0) return;
    const int steps = drive.steps_per_interval;
    for (int s = 0; s < steps; ++s) {
      emit_step(c, blocks, duration / steps, plan.order);
    }
  };
  auto pulse = [&](char letter, double since_last) {
    for (int j = 0; j < sys.n_nv; ++j) {
      Gate g = Gate::rxy(j, letter == 'X' ? 0.0 : kPi / 2.0, kPi);
      g.tag = GateTag::PiPulse;
      g.sim_dt = since_last;
      c.add(g);
    }
  };
  const int pulses = static_cast<int>(drive.pattern.size()) * drive.n_blocks;
  auto letter = [&](int i) {
    return drive.pattern[i % drive.pattern.size()];
  };

  // Symmetric sub-sequence: pulses centered in their intervals
  // (tau/2, then tau spacings, closing tau/2), wrapped so the effective
  // sigma_z I_x coupling becomes sigma_x I_x.
  for (int j = 0; j < sys.n_nv; ++j) c.add(Gate::rxy(j, kPi / 2.0, -kPi / 2.0));
  free_evolution(tau / 2.0);
  for (int i = 0; i < pulses; ++i) {
    pulse(letter(i), i == 0 ? tau / 2.0 : tau);
    free_evolution(i + 1 < pulses ? tau : tau / 2.0);
  }
  for (int j = 0; j < sys.n_nv; ++j) c.add(Gate::rxy(j, kPi / 2.0, kPi / 2.0));

  // Asymmetric sub-sequence: same pattern shifted by tau/2 (pulses close
  // each interval), wrapped to produce sigma_y I_y.
  for (int j = 0; j < sys.n_nv; ++j) c.add(Gate::rxy(j, 0.0, kPi / 2.0));
  for (int i = 0; i < pulses; ++i) {
    free_evolution(tau);
    pulse(letter(i), tau);
  }
  for (int j = 0; j < sys.n_nv; ++j) c.add(Gate::rxy(j, 0.0, -kPi / 2.0));
  return c;
}

Circuit build_protocol(const SpinSystem& sys, const Drive& drive,
                       const TrotterPlan& plan, NvInit init,
                       TermOrder term_order) {
  drive.validate();
  plan.validate();
  sys.validate();
  const bool continuous = drive.mode == DriveMode::Continuous;
  if (continuous && (init == NvInit::Zero || init == NvInit::One)) {
    throw std::invalid_argument("continuous driving initializes the NV in |+> or |->");
  }
  if (!continuous && (init == NvInit::Plus || init == NvInit::Minus)) {
    throw std::invalid_argument("pulsed driving initializes the NV in |0> or |1>");
  }

  Circuit c(sys.total_qubits());
  emit_nv_init(c, sys, init);
  const double dt = plan.t_final / plan.steps;
  for (int cycle = 0; cycle < plan.cycles; ++cycle) {
    if (continuous) {
      for (int s = 0; s < plan.steps; ++s) {
        append_circuit(c, trotter_step(sys, drive, dt, plan.order, term_order));
      }
    } else {
      append_circuit(c, pulsed_schedule(sys, drive, plan, term_order));
    }
    c.add(Gate::barrier());  // measurement point of this cycle
    for (int j = 0; j < sys.n_nv; ++j) c.add(Gate::reset(j));
    emit_nv_init(c, sys, init);
  }
  c.add(Gate::barrier());
  return c;
}

Circuit qdrift_sample(const PauliHamiltonian& ham, int n_qubits, double t_f,
                      int n_terms, std::uint64_t seed) {
  if (n_terms < 1) throw std::invalid_argument("n_terms must be >= 1");
  const std::vector<PauliTerm> terms = ham.all_terms();
  const double lambda = lambda_total(ham);
  if (terms.empty() || lambda <= 0.0) {
    throw std::invalid_argument("qDRIFT needs a non-empty Hamiltonian");
  }
  std::vector<double> cdf(terms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += std::abs(terms[i].coeff) / lambda;
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  Rng rng(seed);
  Circuit c(n_qubits);
  const double theta0 = lambda * t_f / n_terms;
  for (int i = 0; i < n_terms; ++i) {
    const double u = rng.uniform();
    std::size_t pick = 0;
    while (pick + 1 < cdf.size() && u >= cdf[pick]) ++pick;
    const PauliTerm& term = terms[pick];
    int qa = -1, qb = -1;
    char la = 'I', lb = 'I';
    for (int q = 0; q < n_qubits; ++q) {
      if (term.letters[q] == 'I') continue;
      if (qa < 0) {
        qa = q;
        la = term.letters[q];
      } else {
        qb = q;
        lb = term.letters[q];
      }
    }
    const double theta = term.coeff >= 0.0 ? theta0 : -theta0;
    emit_pauli_exponential(c, qa, la, qb, lb, theta);
  }
  return c;
}

double qdrift_error_bound(double lambda, double t_f, int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("n_terms must be >= 1");
  return 2.0 * lambda * lambda * t_f * t_f / n_terms;
}

RotationalOptimization rotational_optimize(const SpinSystem& sys) {
  sys.validate();
  if (sys.n_nv != 1) {
    throw std::invalid_argument("rotational optimization assumes a single NV");
  }
  for (int k1 = 0; k1 < sys.n_nuclei; ++k1)
    for (int k2 = k1 + 1; k2 < sys.n_nuclei; ++k2)
      if (sys.g_between(k1, k2) != 0.0) {
        throw std::invalid_argument(
            "rotational optimization requires no internuclear couplings");
      }

  RotationalOptimization out;
  out.system = sys;
  for (int k = 0; k < sys.n_nuclei; ++k) {
    const Vec3 a = sys.hyperfine[0][k];
    const double an = a.norm();
    if (an == 0.0) {
      out.counter_rotations.push_back(Gate::rxy(sys.n_nv + k, 0.0, 0.0));
      continue;
    }
    const double theta = std::acos(std::clamp(a.z() / an, -1.0, 1.0));
    const double phi_xy = std::atan2(a.y(), a.x());
    const double phi = -kPi / 2.0 + phi_xy;
    const Vec3 axis(std::cos(phi), std::sin(phi), 0.0);
    auto rodrigues = [&](const Vec3& v) -> Vec3 {
      return v * std::cos(theta) + axis.cross(v) * std::sin(theta) +
             axis * (axis.dot(v)) * (1.0 - std::cos(theta));
    };
    const Vec3 a_rot = rodrigues(a);
    if ((a_rot - Vec3(0.0, 0.0, an)).norm() > 1e-9 * std::max(1.0, an)) {
      throw std::logic_error("frame rotation failed to align the hyperfine vector");
    }
    out.system.hyperfine[0][k] = Vec3(0.0, 0.0, an);
    out.system.omega_override[k] = rodrigues(sys.omega_c(k));
    // counter-rotation before measurement: the inverse of the spin-frame
    // rotation exp(-i theta/2 (cos phi X + sin phi Y)) that maps A to +z
    out.counter_rotations.push_back(Gate::rxy(sys.n_nv + k, phi, -theta));
  }
  return out;
}

std::vector<std::pair<int, int>> odd_even_pair_schedule(int n) {
  if (n < 2) return {};
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<std::vector<bool>> done(n, std::vector<bool>(n, false));
  std::vector<std::pair<int, int>> schedule;
  const int total = n * (n - 1) / 2;
  int parity = 0;
  while (static_cast<int>(schedule.size()) < total) {
    for (int pos = 0; pos + 1 < n; ++pos) {
      const int a = order[pos], b = order[pos + 1];
      const int lo = std::min(a, b), hi = std::max(a, b);
      if (!done[lo][hi]) {
        done[lo][hi] = true;
        schedule.emplace_back(a, b);
      }
    }
    if (static_cast<int>(schedule.size()) >= total) break;
    for (int pos = parity; pos + 1 < n; pos += 2) {
      std::swap(order[pos], order[pos + 1]);
    }
    parity ^= 1;
  }
  return schedule;
}

}  // namespace nanonmr
