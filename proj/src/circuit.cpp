// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace nanonmr {

void Circuit::add(const Gate& g) {
  for (int i = 0; i < g.arity(); ++i) {
    if (g.qubits[i] < 0 || g.qubits[i] >= n_qubits) {
      throw std::invalid_argument("gate qubit out of range");
    }
  }
  if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
    throw std::invalid_argument("two-qubit gate needs distinct qubits");
  }
  gates.push_back(g);
  moments.clear();
}

double gate_duration(const Gate& g, const GateDurations& durations) {
  switch (g.kind) {
    case GateKind::Barrier:
    case GateKind::Reset:
      return 0.0;
    case GateKind::Rz:
      return g.is_virtual ? 0.0 : durations.sqg_us;
    case GateKind::Swap:
      return 3.0 * durations.tqg_us;  // compiled out of three native TQGs
    case GateKind::UZZ:
    case GateKind::CZ:
    case GateKind::ISwap:
    case GateKind::Cnot:
      return durations.tqg_us;
    default:
      return durations.sqg_us;
  }
}

Circuit schedule_moments(const Circuit& c, const GateDurations& durations) {
  Circuit out = c;
  out.moments.clear();
  // next free moment per qubit
  std::vector<int> next_free(c.n_qubits, 0);
  std::vector<Moment> moments;

  auto place = [&](int gate_index, int moment) {
    while (static_cast<int>(moments.size()) <= moment) moments.push_back({});
    moments[moment].gate_indices.push_back(gate_index);
    const double d = gate_duration(c.gates[gate_index], durations);
    moments[moment].duration_us = std::max(moments[moment].duration_us, d);
  };

  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::Barrier) {
      int m = 0;
      for (int q = 0; q < c.n_qubits; ++q) m = std::max(m, next_free[q]);
      place(i, m);
      for (int q = 0; q < c.n_qubits; ++q) next_free[q] = m + 1;
      continue;
    }
    int m = 0;
    for (int k = 0; k < g.arity(); ++k) m = std::max(m, next_free[g.qubits[k]]);
    place(i, m);
    for (int k = 0; k < g.arity(); ++k) next_free[g.qubits[k]] = m + 1;
  }
  out.moments = std::move(moments);
  return out;
}

GateCounts count_gates(const Circuit& c) {
  Circuit scheduled = c.scheduled() ? c : schedule_moments(c, GateDurations{});
  GateCounts counts;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Swap) {
      counts.n_swap += 1;
      counts.n_tqg += 3;
    } else if (g.is_two_qubit()) {
      counts.n_tqg += 1;
    } else if (g.is_physical_sqg()) {
      counts.n_sqg += 1;
    }
  }
  for (const Moment& m : scheduled.moments) {
    const bool has_tqg = std::any_of(
        m.gate_indices.begin(), m.gate_indices.end(),
        [&](int i) { return scheduled.gates[i].is_two_qubit(); });
    if (has_tqg) counts.tqg_depth += 1;
  }
  return counts;
}

namespace {

using json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* tag_name(GateTag t) {
  switch (t) {
    case GateTag::Drive: return "drive";
    case GateTag::PiPulse: return "pi_pulse";
    default: return "none";
  }
}

GateTag tag_from_name(const std::string& s) {
  if (s == "drive") return GateTag::Drive;
  if (s == "pi_pulse") return GateTag::PiPulse;
  return GateTag::None;
}

}  // namespace

std::string circuit_to_json(const Circuit& c) {
  // Hand-assembled so numeric fields are always 17-significant-digit and the
  // byte output is stable across library versions.
  std::string out = "{\n  \"n_qubits\": " + std::to_string(c.n_qubits) +
                    ",\n  \"gates\": [";
  bool first = true;
  for (const Gate& g : c.gates) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"kind\": \"";
    out += gate_kind_name(g.kind);
    out += "\", \"qubits\": [";
    for (int k = 0; k < g.arity(); ++k) {
      if (k) out += ", ";
      out += std::to_string(g.qubits[k]);
    }
    out += "], \"params\": [";
    const int n_params =
        (g.kind == GateKind::Rxy) ? 2
        : (g.kind == GateKind::Rz || g.kind == GateKind::UZZ ||
           g.kind == GateKind::CZ)
            ? 1
            : 0;
    for (int k = 0; k < n_params; ++k) {
      if (k) out += ", ";
      out += fmt17(k == 0 ? g.p0 : g.p1);
    }
    out += "]";
    if (g.kind == GateKind::Rz) {
      out += std::string(", \"virtual\": ") + (g.is_virtual ? "true" : "false");
    }
    if (g.tag != GateTag::None) {
      out += std::string(", \"tag\": \"") + tag_name(g.tag) + "\"";
      out += ", \"sim_dt\": " + fmt17(g.sim_dt);
    }
    out += "}";
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

Circuit circuit_from_json(const std::string& text) {
  const json j = json::parse(text);
  Circuit c(j.at("n_qubits").get<int>());
  for (const auto& gj : j.at("gates")) {
    Gate g{gate_kind_from_name(gj.at("kind").get<std::string>())};
    const auto& qs = gj.at("qubits");
    for (std::size_t k = 0; k < qs.size() && k < 2; ++k) {
      g.qubits[k] = qs[k].get<int>();
    }
    const auto& ps = gj.at("params");
    if (!ps.empty()) g.p0 = ps[0].get<double>();
    if (ps.size() > 1) g.p1 = ps[1].get<double>();
    if (g.kind == GateKind::Rz) g.is_virtual = gj.value("virtual", true);
    if (gj.contains("tag")) {
      g.tag = tag_from_name(gj.at("tag").get<std::string>());
      g.sim_dt = gj.value("sim_dt", 0.0);
    }
    c.add(g);
  }
  return c;
}

}  // namespace nanonmr
