// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary_path() {
  const char* env = std::getenv("NANONMR_BIN");
  REQUIRE(env != nullptr);
  return env;
}

int run_cli(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nanonmr_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kSweepConfig = R"({
  "schema": 1,
  "spin_system": {
    "couplings": {
      "n_nv": 1, "n_nuclei": 1,
      "delta": [0.0],
      "hyperfine": [[[0.3, 0.0, 0.1]]],
      "internuclear": [],
      "bz_tesla": 0.044623
    }
  },
  "drive": {"mode": "continuous", "omega": 0.0, "phi": 0.0},
  "plan": {"t_final": 10.0, "steps": 32, "cycles": 1},
  "init": {"nv": "plus", "nuclei": "random_x", "samples": 0},
  "noise": null,
  "sweep": {"from": 2.4, "to": 3.4, "points": 9},
  "seed": 7
})";

const char* kTranspileConfig = R"({
  "schema": 1,
  "spin_system": {
    "couplings": {
      "n_nv": 1, "n_nuclei": 5,
      "delta": [0.1],
      "hyperfine": [[[0.2, 0.1, 0.3], [0.2, 0.1, 0.25], [0.2, 0.1, 0.2],
                     [0.2, 0.1, 0.15], [0.2, 0.1, 0.1]]],
      "internuclear": [],
      "bz_tesla": 0.0446
    }
  },
  "drive": {"mode": "continuous", "omega": 2.5},
  "plan": {"t_final": 10.0, "steps": 16, "cycles": 1},
  "topology": {"kind": "star", "native": "uzz_param"},
  "seed": 1
})";

}  // namespace

TEST_CASE("sweep subcommand is deterministic and exits cleanly") {
  const fs::path dir = fresh_dir("sweep");
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << kSweepConfig;

  const std::string base = "sweep --config " + cfg.string();
  CHECK(run_cli(base + " --output " + (dir / "a").string()) == 0);
  CHECK(run_cli(base + " --output " + (dir / "b").string()) == 0);
  const std::string spec_a = slurp(dir / "a" / "spectrum.csv");
  CHECK(spec_a == slurp(dir / "b" / "spectrum.csv"));
  CHECK(slurp(dir / "a" / "peaks.json") == slurp(dir / "b" / "peaks.json"));
  CHECK(spec_a.rfind("omega_rad_per_us,qubit,observable,expectation\n", 0) == 0);

  // a different seed changes nothing in the noiseless exhaustive case is not
  // guaranteed, but the output must still be well-formed
  CHECK(run_cli(base + " --seed 99 --output " + (dir / "c").string()) == 0);
  CHECK(slurp(dir / "c" / "spectrum.csv").size() > 0);
}

TEST_CASE("schema violations exit with code 2") {
  const fs::path dir = fresh_dir("bad");
  const fs::path cfg = dir / "bad.json";
  std::ofstream(cfg) << "{\"schema\": 1}";  // no spin system
  CHECK(run_cli("sweep --config " + cfg.string() + " --output " + dir.string()) == 2);

  std::ofstream(cfg) << "{not json";
  CHECK(run_cli("sweep --config " + cfg.string() + " --output " + dir.string()) == 2);
}

TEST_CASE("transpile reports star counts without swaps in the noninteracting case") {
  const fs::path dir = fresh_dir("transpile");
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << kTranspileConfig;
  CHECK(run_cli("transpile --config " + cfg.string() + " --output " + dir.string()) == 0);

  const std::string counts = slurp(dir / "counts.csv");
  CHECK(counts.rfind("topology,n,interacting,N_TQG,N_SQG,N_SWAP,depth", 0) == 0);
  std::istringstream in(counts);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  // topology,n,interacting,N_TQG,N_SQG,N_SWAP,...
  std::istringstream cells(row);
  std::string cell;
  std::getline(cells, cell, ',');
  CHECK(cell == "star");
  std::getline(cells, cell, ',');
  CHECK(cell == "6");
  std::getline(cells, cell, ',');
  CHECK(cell == "0");
  std::getline(cells, cell, ',');
  CHECK(cell == "15");  // 3 TQGs per nucleus
  std::getline(cells, cell, ',');
  std::getline(cells, cell, ',');
  CHECK(cell == "0");  // no swaps on the star without interactions

  CHECK(fs::exists(dir / "circuit.json"));
}

TEST_CASE("counts subcommand tabulates closed forms and savings") {
  const fs::path dir = fresh_dir("counts");
  CHECK(run_cli("counts --n-from 21 --n-to 21 --topologies star --output " +
                dir.string()) == 0);
  const std::string csv = slurp(dir / "counts.csv");
  CHECK(csv.find("star,21,1,") != std::string::npos);
  // savings at n = 21 interacting: 0.9 exactly
  CHECK(csv.find(",0.90000000000000002\n") != std::string::npos);
}

TEST_CASE("simulate and analyze close the loop") {
  const fs::path dir = fresh_dir("roundtrip");
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << kSweepConfig;
  CHECK(run_cli("simulate --config " + cfg.string() + " --output " + dir.string()) == 0);
  CHECK(fs::exists(dir / "expectations.csv"));

  CHECK(run_cli("sweep --config " + cfg.string() + " --output " + dir.string()) == 0);
  CHECK(run_cli("analyze --config " + cfg.string() + " --spectrum " +
                (dir / "spectrum.csv").string() + " --output " +
                (dir / "fits").string()) == 0);
  const std::string peaks = slurp(dir / "fits" / "peaks.json");
  CHECK(peaks.find("\"center\"") != std::string::npos);
}
