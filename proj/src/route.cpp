// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/route.hpp"

#include <cmath>
#include <stdexcept>

#include "nanonmr/constants.hpp"

namespace nanonmr {

namespace {

struct LayoutState {
  std::vector<int> pos;  // logical -> physical
  std::vector<int> occ;  // physical -> logical

  explicit LayoutState(const std::vector<int>& initial) : pos(initial) {
    occ.assign(initial.size(), -1);
    for (std::size_t l = 0; l < initial.size(); ++l) occ[initial[l]] = static_cast<int>(l);
  }

  void swap_physical(int pa, int pb) {
    const int la = occ[pa], lb = occ[pb];
    std::swap(occ[pa], occ[pb]);
    pos[la] = pb;
    pos[lb] = pa;
  }
};

Gate remap(const Gate& g, const LayoutState& layout) {
  Gate out = g;
  for (int i = 0; i < g.arity(); ++i) out.qubits[i] = layout.pos[g.qubits[i]];
  return out;
}

std::vector<int> star_initial_layout(int n, int hub) {
  std::vector<int> pos(n);
  pos[0] = hub;
  int next = 0;
  for (int l = 1; l < n; ++l) {
    if (next == hub) ++next;
    pos[l] = next++;
  }
  return pos;
}

}  // namespace

RoutedCircuit route(const Circuit& c, const Topology& topo, bool interacting) {
  if (topo.n_qubits != c.n_qubits) {
    throw std::invalid_argument("topology size does not match the circuit");
  }
  const int n = c.n_qubits;

  std::vector<int> initial(n);
  for (int i = 0; i < n; ++i) initial[i] = i;
  const bool chain_like = topo.kind == TopologyKind::LinearChain ||
                          topo.kind == TopologyKind::SquareGrid;
  if (topo.kind == TopologyKind::Star) {
    initial = star_initial_layout(n, topo.hub);
  } else if (chain_like && !interacting && n >= 2) {
    // the NV starts on the second qubit of the chain
    initial[0] = 1;
    initial[1] = 0;
  }

  LayoutState layout(initial);
  RoutedCircuit out;
  out.circuit = Circuit(n);
  out.initial_layout = initial;

  int oe_parity = 0;  // next odd-even swap layer (chain-like, interacting)

  auto make_adjacent = [&](int la, int lb) {
    switch (topo.kind) {
      case TopologyKind::AllToAll:
        return;
      case TopologyKind::Star: {
        if (layout.pos[la] == topo.hub || layout.pos[lb] == topo.hub) return;
        // hop the hub state onto the first operand
        out.circuit.add(Gate::swap(topo.hub, layout.pos[la]));
        layout.swap_physical(topo.hub, layout.pos[la]);
        return;
      }
      case TopologyKind::LinearChain:
      case TopologyKind::SquareGrid: {
        if (interacting) {
          // odd-even layers until the pair is adjacent
          int guard = 0;
          while (std::abs(layout.pos[la] - layout.pos[lb]) != 1) {
            for (int p = oe_parity; p + 1 < n; p += 2) {
              out.circuit.add(Gate::swap(p, p + 1));
              layout.swap_physical(p, p + 1);
            }
            oe_parity ^= 1;
            if (++guard > 2 * n + 2) {
              throw std::logic_error("odd-even routing failed to converge");
            }
          }
          return;
        }
        // walk the first operand toward the second
        while (std::abs(layout.pos[la] - layout.pos[lb]) != 1) {
          const int pa = layout.pos[la];
          const int step = layout.pos[lb] > pa ? 1 : -1;
          out.circuit.add(Gate::swap(pa, pa + step));
          layout.swap_physical(pa, pa + step);
        }
        return;
      }
    }
  };

  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Barrier) {
      out.circuit.add(g);
      continue;
    }
    if (g.arity() == 2) {
      make_adjacent(g.qubits[0], g.qubits[1]);
      if (!topo.adjacent(layout.pos[g.qubits[0]], layout.pos[g.qubits[1]])) {
        throw std::logic_error("routing left a two-qubit gate non-adjacent");
      }
    }
    out.circuit.add(remap(g, layout));
  }
  out.final_layout = layout.pos;
  return out;
}

const char* native_gate_set_name(NativeGateSet native) {
  switch (native) {
    case NativeGateSet::UZZParam: return "uzz_param";
    case NativeGateSet::UZZFixed: return "uzz_fixed";
    case NativeGateSet::CZFixed: return "cz_fixed";
    case NativeGateSet::Cnot: return "cnot";
  }
  return "?";
}

NativeGateSet native_gate_set_from_name(const std::string& name) {
  if (name == "uzz_param") return NativeGateSet::UZZParam;
  if (name == "uzz_fixed") return NativeGateSet::UZZFixed;
  if (name == "cz_fixed") return NativeGateSet::CZFixed;
  if (name == "cnot") return NativeGateSet::Cnot;
  throw std::invalid_argument("unknown native gate set: " + name);
}

namespace {

// e^{-i phi ZZ} over the native basis; identities are exact up to global
// phase (checked in the test suite).
void emit_uzz(Circuit& c, int q1, int q2, double phi, NativeGateSet native) {
  switch (native) {
    case NativeGateSet::UZZParam:
      c.add(Gate::uzz(q1, q2, phi));
      return;
    case NativeGateSet::CZFixed:
      c.add(Gate::rxy(q2, 3.0 * kPi / 2.0, kPi / 2.0));
      c.add(Gate::cz(q1, q2, kPi));
      c.add(Gate::rxy(q2, kPi, 2.0 * phi));
      c.add(Gate::cz(q1, q2, kPi));
      c.add(Gate::rxy(q2, kPi / 2.0, kPi / 2.0));
      return;
    case NativeGateSet::UZZFixed:
      c.add(Gate::rz(q2, kPi));
      c.add(Gate::rxy(q2, kPi / 2.0, kPi / 2.0));
      c.add(Gate::rxy(q2, -kPi / 8.0, kPi));
      c.add(Gate::rxy(q2, kPi / 8.0, kPi));
      c.add(Gate::uzz(q1, q2, -kPi / 4.0));
      c.add(Gate::rxy(q2, 0.0, 2.0 * phi));
      c.add(Gate::uzz(q1, q2, -kPi / 4.0));
      c.add(Gate::rxy(q2, -kPi, kPi / 2.0));
      c.add(Gate::rz(q2, 3.0 * kPi / 2.0));
      c.add(Gate::rz(q1, kPi));
      return;
    case NativeGateSet::Cnot:
      c.add(Gate::cnot(q1, q2));
      // trapped between the CNOTs; cannot be made virtual
      c.add(Gate::rz(q2, 2.0 * phi, /*virtual_rz=*/false));
      c.add(Gate::cnot(q1, q2));
      return;
  }
}

void emit_cnot(Circuit& c, int control, int target, NativeGateSet native) {
  switch (native) {
    case NativeGateSet::Cnot:
      c.add(Gate::cnot(control, target));
      return;
    case NativeGateSet::CZFixed:
      c.add(Gate::h(target));
      c.add(Gate::cz(control, target, kPi));
      c.add(Gate::h(target));
      return;
    case NativeGateSet::UZZParam:
    case NativeGateSet::UZZFixed:
      // CZ(pi) = e^{i pi/4} UZZ(-pi/4) Rz(pi/2) x Rz(pi/2)
      c.add(Gate::h(target));
      c.add(Gate::rz(control, kPi / 2.0));
      c.add(Gate::rz(target, kPi / 2.0));
      c.add(Gate::uzz(control, target, -kPi / 4.0));
      c.add(Gate::h(target));
      return;
  }
}

}  // namespace

Circuit decompose_native(const Circuit& c, NativeGateSet native) {
  Circuit out(c.n_qubits);
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::UZZ:
        emit_uzz(out, g.qubits[0], g.qubits[1], g.p0, native);
        break;
      case GateKind::Swap:
        emit_cnot(out, g.qubits[0], g.qubits[1], native);
        emit_cnot(out, g.qubits[1], g.qubits[0], native);
        emit_cnot(out, g.qubits[0], g.qubits[1], native);
        break;
      case GateKind::CZ:
      case GateKind::ISwap:
      case GateKind::Cnot:
        throw std::invalid_argument(
            "decompose_native expects UZZ/Swap two-qubit gates only");
      default:
        out.add(g);
        break;
    }
  }
  return out;
}

ClosedFormCounts closed_form_counts(int n, bool interacting, const Topology& topo) {
  if (n < 3) throw std::invalid_argument("closed forms are tabulated for n >= 3");
  const double nd = n;
  ClosedFormCounts out;
  switch (topo.kind) {
    case TopologyKind::AllToAll:
      if (interacting) {
        out.n_tqg = 1.5 * nd * nd - 1.5 * nd;
        out.n_sqg = 4.0 * nd * nd - 4.5 * nd + 3.5;
      } else {
        out.n_tqg = nd - 1.0;
        out.n_sqg = 2.5 * nd + 2.0;
      }
      return out;
    case TopologyKind::Star:
      if (interacting) {
        out.n_tqg = 1.5 * nd * nd + 1.5 * nd - 6.0;
        out.n_sqg = 4.0 * nd * nd + 3.5 * nd - 12.5;
      } else {
        out.n_tqg = nd - 1.0;
        out.n_sqg = 2.5 * nd + 2.0;
      }
      return out;
    case TopologyKind::LinearChain:
    case TopologyKind::SquareGrid:
      if (interacting) {
        out.n_tqg = 3.0 * nd * nd - 6.0 * nd + 3.0;
        out.n_sqg = 8.0 * nd * nd - 16.5 * nd + 5.5;
      } else {
        out.n_tqg = 4.0 * nd - 4.0;
        out.n_sqg = 10.5 * nd - 23.5;
      }
      return out;
  }
  throw std::invalid_argument("unknown topology");
}

long long closed_form_swaps(int n, bool interacting, const Topology& topo) {
  if (n < 3) throw std::invalid_argument("closed forms are tabulated for n >= 3");
  switch (topo.kind) {
    case TopologyKind::AllToAll:
      return 0;
    case TopologyKind::Star:
      return interacting ? n - 2 : 0;
    case TopologyKind::LinearChain:
    case TopologyKind::SquareGrid:
      return interacting ? static_cast<long long>(n - 1) * (n - 2) / 2
                         : std::max(0, n - 3);
  }
  throw std::invalid_argument("unknown topology");
}

double swap_savings(int n, bool interacting) {
  if (n < 3) {
    throw std::invalid_argument("swap savings are undefined below n = 3");
  }
  if (!interacting) return 1.0;  // the star needs no swaps at all
  const double star = n - 2;
  const double grid = static_cast<double>(n - 1) * (n - 2) / 2.0;
  if (grid == 0.0) throw std::invalid_argument("grid swap count is zero");
  return 1.0 - star / grid;
}

long long tqg_depth_form(int n, const Topology& topo) {
  if (n < 3) throw std::invalid_argument("depth forms are tabulated for n >= 3");
  switch (topo.kind) {
    case TopologyKind::Star:
      return (3LL * n * n + 3LL * n) / 2 - 6;
    case TopologyKind::LinearChain:
    case TopologyKind::SquareGrid:
      return 6LL * n;
    default:
      throw std::invalid_argument("no printed depth form for this topology");
  }
}

double gate_error_bound(long long n_tqg, long long n_sqg, double eps_tqg,
                        double eps_sqg) {
  if (eps_tqg < 0.0 || eps_tqg > 1.0 || eps_sqg < 0.0 || eps_sqg > 1.0) {
    throw std::invalid_argument("gate errors must lie in [0, 1]");
  }
  return 1.0 - std::pow(1.0 - eps_tqg, static_cast<double>(n_tqg)) *
                   std::pow(1.0 - eps_sqg, static_cast<double>(n_sqg));
}

Circuit resonator_protocol_wrap(const Circuit& star_routed) {
  const int n = star_routed.n_qubits;
  const int hub = 0;
  const int res = n;  // appended resonator qubit

  int first_hub_tqg = -1, last_hub_tqg = -1;
  for (int i = 0; i < static_cast<int>(star_routed.gates.size()); ++i) {
    const Gate& g = star_routed.gates[i];
    if (g.arity() == 2 && (g.qubits[0] == hub || g.qubits[1] == hub)) {
      if (first_hub_tqg < 0) first_hub_tqg = i;
      last_hub_tqg = i;
    }
  }

  Circuit out(n + 1);
  auto to_resonator = [&](const Gate& g) {
    Gate m = g;
    for (int k = 0; k < g.arity(); ++k)
      if (m.qubits[k] == hub) m.qubits[k] = res;
    return m;
  };

  const int total = static_cast<int>(star_routed.gates.size());
  const int body_begin = first_hub_tqg < 0 ? total : first_hub_tqg;
  const int body_end = last_hub_tqg < 0 ? total : last_hub_tqg + 1;

  for (int i = 0; i < body_begin; ++i) out.add(star_routed.gates[i]);
  out.add(Gate::iswap(hub, res));
  for (int i = body_begin; i < body_end; ++i) {
    const Gate& g = star_routed.gates[i];
    const bool on_hub = (g.arity() >= 1 && g.qubits[0] == hub) ||
                        (g.arity() == 2 && g.qubits[1] == hub);
    if (!on_hub || g.kind == GateKind::Barrier) {
      out.add(g);
      continue;
    }
    if (g.arity() == 2) {
      if (g.kind != GateKind::UZZ && g.kind != GateKind::CZ) {
        throw std::invalid_argument(
            "resonator protocol requires diagonal hub two-qubit gates");
      }
      out.add(to_resonator(g));
      continue;
    }
    if (g.kind == GateKind::Rz || g.kind == GateKind::Reset) {
      out.add(to_resonator(g));
      continue;
    }
    throw std::invalid_argument(
        "non-diagonal hub gate between the resonator iSWAPs");
  }
  // inverse iSWAP: iSWAP^dag = iSWAP (Z x Z) up to global phase
  out.add(Gate::rz(hub, kPi));
  out.add(Gate::rz(res, kPi));
  out.add(Gate::iswap(hub, res));
  for (int i = body_end; i < total; ++i) out.add(star_routed.gates[i]);
  return out;
}

}  // namespace nanonmr
