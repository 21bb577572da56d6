// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: sweep | simulate | transpile | counts | analyze.
// All outputs are reproducible byte-for-byte from (config, seed).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nanonmr/analysis.hpp"
#include "nanonmr/config.hpp"
#include "nanonmr/engine.hpp"
#include "nanonmr/route.hpp"
#include "nanonmr/synth.hpp"

namespace {

namespace fs = std::filesystem;
using namespace nanonmr;

constexpr int kExitBadConfig = 2;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

struct CommonArgs {
  std::string config_path;
  std::string output_dir = ".";
  std::optional<std::uint64_t> seed;
  int threads = 1;
};

RunConfig load_with_overrides(const CommonArgs& args) {
  RunConfig cfg = load_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  return cfg;
}

std::vector<PeakFit> fit_peaks(const Spectrum& spectrum, const RunConfig& cfg) {
  // expected resonances: the modified Larmor magnitudes per nucleus
  std::vector<double> resonances;
  for (int k = 0; k < cfg.system.n_nuclei; ++k) {
    resonances.push_back(cfg.system.omega_c(k).norm());
  }
  const auto windows = peak_windows(spectrum.grid, resonances);
  // nucleus curves: z-polarization gain relative to the grid edge, oriented
  // so transfer peaks are positive
  std::vector<PeakFit> fits;
  for (int k = 0; k < cfg.system.n_nuclei; ++k) {
    const int qubit = cfg.system.n_nv + k;
    std::vector<double> curve = spectrum.gain_curve(qubit, 'z', 0.0, 1.0);
    const double edge = curve.front();
    double extreme = 0.0;
    for (double v : curve) {
      if (std::abs(v - edge) > std::abs(extreme)) extreme = v - edge;
    }
    const double sign = extreme >= 0.0 ? 1.0 : -1.0;
    for (double& v : curve) v = sign * (v - edge);
    const auto [first, last] = windows[k];
    if (first > last || last - first + 1 < 5) {
      throw std::runtime_error("peak window too narrow for a fit");
    }
    std::vector<double> xs(spectrum.grid.begin() + first,
                           spectrum.grid.begin() + last + 1);
    std::vector<double> ys(curve.begin() + first, curve.begin() + last + 1);
    fits.push_back(gaussian_fit(xs, ys));
  }
  return fits;
}

int cmd_sweep(const CommonArgs& args) {
  const RunConfig cfg = load_with_overrides(args);
  const Spectrum spectrum = sweep(cfg.sweep_settings(args.threads));
  write_file(fs::path(args.output_dir) / "spectrum.csv", spectrum_to_csv(spectrum));
  std::string fits_json = "[]\n";
  try {
    fits_json = peak_fits_to_json(fit_peaks(spectrum, cfg));
  } catch (const std::exception& e) {
    std::cerr << "peak fitting skipped: " << e.what() << "\n";
  }
  write_file(fs::path(args.output_dir) / "peaks.json", fits_json);
  std::cout << "wrote " << (fs::path(args.output_dir) / "spectrum.csv").string()
            << " and peaks.json\n";
  return 0;
}

int cmd_simulate(const CommonArgs& args) {
  const RunConfig cfg = load_with_overrides(args);
  Circuit circuit = build_protocol(cfg.system, cfg.drive, cfg.plan, cfg.nv_init,
                                   cfg.term_order);
  if (cfg.topology) {
    circuit = route(circuit, *cfg.topology, has_internuclear(cfg.system)).circuit;
  }
  RunOptions opts;
  opts.seed = cfg.seed;
  opts.ou = cfg.ou;
  opts.samples = cfg.samples;
  opts.init = cfg.init_spec;
  for (int k = 0; k < cfg.system.n_nuclei; ++k) {
    opts.init.random_qubits.push_back(cfg.system.n_nv + k);
  }
  const RunResult result = run(circuit, cfg.noise, opts);
  const Expectations& e =
      cfg.plan.cycles >= 1 &&
              static_cast<int>(result.at_barriers.size()) >= cfg.plan.cycles
          ? result.at_barriers[cfg.plan.cycles - 1]
          : result.final_exp;
  std::string out = "qubit,observable,expectation\n";
  for (std::size_t q = 0; q < e.x.size(); ++q) {
    out += std::to_string(q) + ",x," + fmt17(e.x[q]) + "\n";
    out += std::to_string(q) + ",y," + fmt17(e.y[q]) + "\n";
    out += std::to_string(q) + ",z," + fmt17(e.z[q]) + "\n";
  }
  write_file(fs::path(args.output_dir) / "expectations.csv", out);
  std::cout << "wrote " << (fs::path(args.output_dir) / "expectations.csv").string()
            << "\n";
  return 0;
}

int cmd_transpile(const CommonArgs& args) {
  const RunConfig cfg = load_with_overrides(args);
  if (!cfg.topology) {
    throw std::invalid_argument("transpile needs a topology block in the config");
  }
  const bool interacting = has_internuclear(cfg.system);
  // counting circuits use the ordering the layout serves without re-routing
  TermOrder order = cfg.term_order;
  if (order == TermOrder::Sweep) {
    const bool chain_like = cfg.topology->kind == TopologyKind::LinearChain ||
                            cfg.topology->kind == TopologyKind::SquareGrid;
    order = (chain_like && interacting) ? TermOrder::OddEven : TermOrder::HubGrouped;
  }
  const double dt = cfg.plan.t_final / cfg.plan.steps;
  const Circuit step = trotter_step(cfg.system, cfg.drive, dt, cfg.plan.order, order);
  const RoutedCircuit routed = route(step, *cfg.topology, interacting);
  const Circuit native = decompose_native(routed.circuit, cfg.native);
  const GateCounts measured = count_gates(routed.circuit);
  const int n = cfg.system.total_qubits();

  write_file(fs::path(args.output_dir) / "circuit.json", circuit_to_json(native));

  std::string csv =
      "topology,n,interacting,N_TQG,N_SQG,N_SWAP,depth,closed_N_TQG,closed_N_SQG,"
      "closed_N_SWAP\n";
  const ClosedFormCounts closed = closed_form_counts(n, interacting, *cfg.topology);
  csv += std::string(topology_kind_name(cfg.topology->kind)) + "," +
         std::to_string(n) + "," + (interacting ? "1" : "0") + "," +
         std::to_string(measured.n_tqg) + "," + std::to_string(measured.n_sqg) +
         "," + std::to_string(measured.n_swap) + "," +
         std::to_string(measured.tqg_depth) + "," + fmt17(closed.n_tqg) + "," +
         fmt17(closed.n_sqg) + "," +
         std::to_string(closed_form_swaps(n, interacting, *cfg.topology)) + "\n";
  write_file(fs::path(args.output_dir) / "counts.csv", csv);
  std::cout << "wrote circuit.json and counts.csv (N_TQG=" << measured.n_tqg
            << ", swaps=" << measured.n_swap << ")\n";
  return 0;
}

int cmd_counts(const std::string& output_dir, int n_from, int n_to,
               const std::vector<std::string>& topologies) {
  std::string csv = "topology,n,interacting,N_TQG,N_SQG,N_SWAP,depth,savings\n";
  for (const std::string& name : topologies) {
    const TopologyKind kind = topology_kind_from_name(name);
    for (int n = n_from; n <= n_to; ++n) {
      Topology topo;
      switch (kind) {
        case TopologyKind::Star: topo = Topology::star(n); break;
        case TopologyKind::SquareGrid: topo = Topology::square_grid(n); break;
        case TopologyKind::LinearChain: topo = Topology::linear_chain(n); break;
        case TopologyKind::AllToAll: topo = Topology::all_to_all(n); break;
      }
      for (int interacting = 0; interacting <= 1; ++interacting) {
        const ClosedFormCounts c = closed_form_counts(n, interacting, topo);
        std::string depth;
        if (interacting &&
            (kind == TopologyKind::Star || kind == TopologyKind::SquareGrid ||
             kind == TopologyKind::LinearChain)) {
          depth = std::to_string(tqg_depth_form(n, topo));
        }
        std::string savings;
        if (kind == TopologyKind::Star) {
          savings = fmt17(swap_savings(n, interacting != 0));
        }
        csv += name + "," + std::to_string(n) + "," +
               std::to_string(interacting) + "," + fmt17(c.n_tqg) + "," +
               fmt17(c.n_sqg) + "," +
               std::to_string(closed_form_swaps(n, interacting != 0, topo)) + "," +
               depth + "," + savings + "\n";
      }
    }
  }
  write_file(fs::path(output_dir) / "counts.csv", csv);
  std::cout << "wrote " << (fs::path(output_dir) / "counts.csv").string() << "\n";
  return 0;
}

int cmd_analyze(const CommonArgs& args, const std::string& spectrum_path) {
  const RunConfig cfg = load_with_overrides(args);
  std::ifstream in(spectrum_path);
  if (!in) throw std::invalid_argument("cannot open spectrum: " + spectrum_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const Spectrum spectrum = spectrum_from_csv(buf.str());
  const std::vector<PeakFit> fits = fit_peaks(spectrum, cfg);
  write_file(fs::path(args.output_dir) / "peaks.json", peak_fits_to_json(fits));
  std::cout << "wrote " << (fs::path(args.output_dir) / "peaks.json").string()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gate-level simulator and transpiler for nanoscale-NMR "
               "hyperpolarization protocols"};
  app.require_subcommand(1);

  CommonArgs args;
  int n_from = 4, n_to = 20;
  std::vector<std::string> topologies = {"star", "square_grid", "all_to_all"};
  std::string spectrum_path;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", args.config_path, "config JSON path");
    if (needs_config) opt->required();
    sub->add_option("--output", args.output_dir, "output directory");
    sub->add_option("--seed", args.seed, "override the config seed");
    sub->add_option("--threads", args.threads, "worker threads");
  };

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "frequency sweep -> spectrum + fits");
  add_common(sweep_cmd, true);
  CLI::App* sim_cmd = app.add_subcommand("simulate", "single protocol run");
  add_common(sim_cmd, true);
  CLI::App* trans_cmd = app.add_subcommand("transpile", "route + native decomposition");
  add_common(trans_cmd, true);
  CLI::App* counts_cmd = app.add_subcommand("counts", "closed-form count tables");
  counts_cmd->add_option("--output", args.output_dir, "output directory");
  counts_cmd->add_option("--n-from", n_from, "smallest qubit count");
  counts_cmd->add_option("--n-to", n_to, "largest qubit count");
  counts_cmd->add_option("--topologies", topologies, "topology names");
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "fit peaks of a spectrum CSV");
  add_common(analyze_cmd, true);
  analyze_cmd->add_option("--spectrum", spectrum_path, "spectrum CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(args);
    if (sim_cmd->parsed()) return cmd_simulate(args);
    if (trans_cmd->parsed()) return cmd_transpile(args);
    if (counts_cmd->parsed()) return cmd_counts(args.output_dir, n_from, n_to, topologies);
    if (analyze_cmd->parsed()) return cmd_analyze(args, spectrum_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
