// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nanonmr/analysis.hpp"
#include "nanonmr/route.hpp"

namespace nanonmr {

// Run configuration parsed from a versioned JSON document; see README for
// the schema. Exactly one of the spin-system couplings/geometry blocks must
// be present. Throws std::invalid_argument with a descriptive message on
// schema violations.
struct RunConfig {
  int schema = 1;
  SpinSystem system;
  Drive drive;
  TrotterPlan plan;
  NvInit nv_init = NvInit::Plus;
  std::optional<NoiseModel> noise;
  std::optional<OUParams> ou;
  std::optional<Topology> topology;
  NativeGateSet native = NativeGateSet::UZZParam;
  TermOrder term_order = TermOrder::Sweep;
  InitSpec init_spec;
  int samples = 0;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_points = 0;
  std::uint64_t seed = 0;

  SweepSettings sweep_settings(int threads) const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace nanonmr
