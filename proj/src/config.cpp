// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nanonmr {

namespace {

using json = nlohmann::ordered_json;

NvInit nv_init_from_name(const std::string& s) {
  if (s == "plus") return NvInit::Plus;
  if (s == "minus") return NvInit::Minus;
  if (s == "zero") return NvInit::Zero;
  if (s == "one") return NvInit::One;
  throw std::invalid_argument("unknown nv init: " + s);
}

TermOrder term_order_from_name(const std::string& s) {
  if (s == "sweep") return TermOrder::Sweep;
  if (s == "hub_grouped") return TermOrder::HubGrouped;
  if (s == "odd_even") return TermOrder::OddEven;
  throw std::invalid_argument("unknown term order: " + s);
}

InitMethod init_method_from_name(const std::string& s) {
  if (s == "random_x") return InitMethod::RandomX;
  if (s == "random_phase") return InitMethod::RandomPhase;
  if (s == "pure") return InitMethod::Pure;
  throw std::invalid_argument("unknown init method: " + s);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.schema = j.value("schema", 1);
  if (cfg.schema != 1) {
    throw std::invalid_argument("unsupported config schema version");
  }
  if (!j.contains("spin_system")) {
    throw std::invalid_argument("config needs a \"spin_system\" block");
  }
  cfg.system = spin_system_from_json(j.at("spin_system").dump());

  if (j.contains("drive")) {
    const json& d = j.at("drive");
    const std::string mode = d.value("mode", "continuous");
    if (mode == "continuous") cfg.drive.mode = DriveMode::Continuous;
    else if (mode == "pulsed") cfg.drive.mode = DriveMode::Pulsed;
    else throw std::invalid_argument("drive mode must be continuous or pulsed");
    cfg.drive.omega = d.value("omega", 0.0);
    cfg.drive.phi = d.value("phi", 0.0);
    cfg.drive.harmonic = d.value("harmonic", 1);
    cfg.drive.pattern = d.value("pattern", std::string("XYXYYXYX"));
    cfg.drive.n_blocks = d.value("n_blocks", 1);
    cfg.drive.steps_per_interval = d.value("steps_per_interval", 1);
  }
  if (j.contains("plan")) {
    const json& p = j.at("plan");
    cfg.plan.t_final = p.value("t_final", 30.0);
    cfg.plan.steps = p.value("steps", 32);
    cfg.plan.cycles = p.value("cycles", 1);
    cfg.plan.order = p.value("order", 1);
    cfg.plan.validate();
  }
  if (j.contains("init")) {
    const json& i = j.at("init");
    cfg.nv_init = nv_init_from_name(i.value("nv", std::string("plus")));
    cfg.init_spec.method =
        init_method_from_name(i.value("nuclei", std::string("random_x")));
    cfg.samples = i.value("samples", 0);
    if (cfg.samples < 0) throw std::invalid_argument("samples must be >= 0");
  } else {
    cfg.nv_init = cfg.drive.mode == DriveMode::Continuous ? NvInit::Plus : NvInit::One;
  }
  if (j.contains("noise") && !j.at("noise").is_null()) {
    const json& n = j.at("noise");
    NoiseModel m = NoiseModel::figure_defaults();
    m.t1 = n.value("t1", m.t1);
    m.t2 = n.value("t2", m.t2);
    m.eps_tqg = n.value("eps_tqg", m.eps_tqg);
    m.eps_sqg = n.value("eps_sqg", m.eps_tqg / 10.0);
    m.tau_sqg = n.value("tau_sqg", m.tau_sqg);
    m.tau_tqg = n.value("tau_tqg", m.tau_tqg);
    const std::string deph = n.value("dephasing", std::string("markovian"));
    if (deph == "markovian") m.dephasing = DephasingMode::Markovian;
    else if (deph == "one_over_f") m.dephasing = DephasingMode::OneOverF;
    else throw std::invalid_argument("dephasing must be markovian or one_over_f");
    m.beta = n.value("beta", m.beta);
    m.omega_ir = n.value("omega_ir", m.omega_ir);
    m.omega_uv = n.value("omega_uv", m.omega_uv);
    m.validate();
    cfg.noise = m;
  }
  if (j.contains("ou") && !j.at("ou").is_null()) {
    OUParams p;
    p.tau = j.at("ou").value("tau", p.tau);
    p.c = j.at("ou").value("c", p.c);
    if (p.tau <= 0.0 || p.c < 0.0) throw std::invalid_argument("bad OU parameters");
    cfg.ou = p;
  }
  if (j.contains("topology") && !j.at("topology").is_null()) {
    const json& t = j.at("topology");
    const TopologyKind kind =
        topology_kind_from_name(t.at("kind").get<std::string>());
    const int n = cfg.system.total_qubits();
    switch (kind) {
      case TopologyKind::Star:
        cfg.topology = Topology::star(n, t.value("hub", 0));
        break;
      case TopologyKind::SquareGrid: cfg.topology = Topology::square_grid(n); break;
      case TopologyKind::LinearChain: cfg.topology = Topology::linear_chain(n); break;
      case TopologyKind::AllToAll: cfg.topology = Topology::all_to_all(n); break;
    }
    if (t.contains("native")) {
      cfg.native = native_gate_set_from_name(t.at("native").get<std::string>());
    }
  }
  if (j.contains("term_order")) {
    cfg.term_order = term_order_from_name(j.at("term_order").get<std::string>());
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    cfg.sweep_from = s.at("from").get<double>();
    cfg.sweep_to = s.at("to").get<double>();
    cfg.sweep_points = s.at("points").get<int>();
    if (cfg.sweep_points < 2) {
      throw std::invalid_argument("sweep needs at least 2 points");
    }
    if (cfg.sweep_to <= cfg.sweep_from) {
      throw std::invalid_argument("sweep range must be increasing");
    }
  }
  cfg.seed = j.value("seed", 0ULL);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

SweepSettings RunConfig::sweep_settings(int threads) const {
  if (sweep_points < 2) {
    throw std::invalid_argument("config has no sweep grid");
  }
  SweepSettings s;
  s.system = system;
  s.drive = drive;
  s.plan = plan;
  s.init = nv_init;
  s.noise = noise;
  s.ou = ou;
  s.init_spec = init_spec;
  s.samples = samples;
  s.topology = topology;
  s.term_order = term_order;
  s.from = sweep_from;
  s.to = sweep_to;
  s.n_points = sweep_points;
  s.seed = seed;
  s.threads = threads;
  return s;
}

}  // namespace nanonmr
