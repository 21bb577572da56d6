// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace nanonmr {

namespace {
using Complex = std::complex<double>;
const Complex kI(0.0, 1.0);
}  // namespace

Gate Gate::rxy(int q, double phi, double theta) {
  Gate g{GateKind::Rxy};
  g.qubits = {q, -1};
  g.p0 = phi;
  g.p1 = theta;
  return g;
}

Gate Gate::rz(int q, double theta, bool virtual_rz) {
  Gate g{GateKind::Rz};
  g.qubits = {q, -1};
  g.p0 = theta;
  g.is_virtual = virtual_rz;
  return g;
}

Gate Gate::x(int q) {
  Gate g{GateKind::X};
  g.qubits = {q, -1};
  return g;
}

Gate Gate::y(int q) {
  Gate g{GateKind::Y};
  g.qubits = {q, -1};
  return g;
}

Gate Gate::h(int q) {
  Gate g{GateKind::Hadamard};
  g.qubits = {q, -1};
  return g;
}

Gate Gate::uzz(int a, int b, double phi) {
  Gate g{GateKind::UZZ};
  g.qubits = {a, b};
  g.p0 = phi;
  return g;
}

Gate Gate::cz(int a, int b, double phi) {
  Gate g{GateKind::CZ};
  g.qubits = {a, b};
  g.p0 = phi;
  return g;
}

Gate Gate::iswap(int a, int b) {
  Gate g{GateKind::ISwap};
  g.qubits = {a, b};
  return g;
}

Gate Gate::swap(int a, int b) {
  Gate g{GateKind::Swap};
  g.qubits = {a, b};
  return g;
}

Gate Gate::cnot(int control, int target) {
  Gate g{GateKind::Cnot};
  g.qubits = {control, target};
  return g;
}

Gate Gate::reset(int q) {
  Gate g{GateKind::Reset};
  g.qubits = {q, -1};
  return g;
}

Gate Gate::barrier() {
  Gate g{GateKind::Barrier};
  return g;
}

int Gate::arity() const {
  switch (kind) {
    case GateKind::UZZ:
    case GateKind::CZ:
    case GateKind::ISwap:
    case GateKind::Swap:
    case GateKind::Cnot:
      return 2;
    case GateKind::Barrier:
      return 0;
    default:
      return 1;
  }
}

bool Gate::is_two_qubit() const { return arity() == 2; }

bool Gate::is_physical_sqg() const {
  switch (kind) {
    case GateKind::Rxy:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Hadamard:
      return true;
    case GateKind::Rz:
      return !is_virtual;
    default:
      return false;
  }
}

bool Gate::is_diagonal() const {
  switch (kind) {
    case GateKind::Rz:
    case GateKind::UZZ:
    case GateKind::CZ:
    case GateKind::Barrier:
      return true;
    default:
      return false;
  }
}

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Rxy: return "rxy";
    case GateKind::Rz: return "rz";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Hadamard: return "h";
    case GateKind::UZZ: return "uzz";
    case GateKind::CZ: return "cz";
    case GateKind::ISwap: return "iswap";
    case GateKind::Swap: return "swap";
    case GateKind::Cnot: return "cnot";
    case GateKind::Reset: return "reset";
    case GateKind::Barrier: return "barrier";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  static const std::unordered_map<std::string, GateKind> map = {
      {"rxy", GateKind::Rxy},     {"rz", GateKind::Rz},
      {"x", GateKind::X},         {"y", GateKind::Y},
      {"h", GateKind::Hadamard},  {"uzz", GateKind::UZZ},
      {"cz", GateKind::CZ},       {"iswap", GateKind::ISwap},
      {"swap", GateKind::Swap},   {"cnot", GateKind::Cnot},
      {"reset", GateKind::Reset}, {"barrier", GateKind::Barrier},
  };
  auto it = map.find(name);
  if (it == map.end()) throw std::invalid_argument("unknown gate kind: " + name);
  return it->second;
}

Eigen::MatrixXcd gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::Rxy: {
      // exp(-i (cos p0 X + sin p0 Y) p1 / 2)
      Eigen::Matrix2cd m;
      const double c = std::cos(g.p1 / 2.0), s = std::sin(g.p1 / 2.0);
      m << c, -kI * s * std::exp(-kI * g.p0),
           -kI * s * std::exp(kI * g.p0), c;
      return m;
    }
    case GateKind::Rz: {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
      m(0, 0) = std::exp(-kI * g.p0 / 2.0);
      m(1, 1) = std::exp(kI * g.p0 / 2.0);
      return m;
    }
    case GateKind::X: {
      Eigen::Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::Y: {
      Eigen::Matrix2cd m;
      m << 0, -kI, kI, 0;
      return m;
    }
    case GateKind::Hadamard: {
      Eigen::Matrix2cd m;
      const double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      return m;
    }
    case GateKind::UZZ: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = std::exp(-kI * g.p0);
      m(1, 1) = std::exp(kI * g.p0);
      m(2, 2) = std::exp(kI * g.p0);
      m(3, 3) = std::exp(-kI * g.p0);
      return m;
    }
    case GateKind::CZ: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      m(3, 3) = std::exp(-kI * g.p0);
      return m;
    }
    case GateKind::ISwap: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 2) = -kI;
      m(2, 1) = -kI;
      m(3, 3) = 1;
      return m;
    }
    case GateKind::Swap: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = 1;
      return m;
    }
    case GateKind::Cnot: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
      return m;
    }
    case GateKind::Reset:
    case GateKind::Barrier:
      throw std::invalid_argument("gate has no unitary");
  }
  throw std::invalid_argument("unknown gate kind");
}

}  // namespace nanonmr
