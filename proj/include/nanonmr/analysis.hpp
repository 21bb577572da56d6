// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nanonmr/engine.hpp"
#include "nanonmr/route.hpp"
#include "nanonmr/synth.hpp"

namespace nanonmr {

// Frequency-swept protocol output: per grid point, per qubit, the final-cycle
// X/Y/Z expectations.
struct Spectrum {
  std::vector<double> grid;            // rad/us, monotone
  std::vector<Expectations> points;    // one per grid point

  // polarization gain of `qubit` in `observable` ('x','y','z') relative to
  // the first... baseline value, with the sign chosen so transfer peaks are
  // positive: gain = sign * (final - baseline)
  std::vector<double> gain_curve(int qubit, char observable, double baseline,
                                 double sign) const;
};

struct SweepSettings {
  SpinSystem system;
  Drive drive;
  TrotterPlan plan;
  NvInit init = NvInit::Plus;
  std::optional<NoiseModel> noise;
  std::optional<OUParams> ou;
  InitSpec init_spec;
  int samples = 0;
  std::optional<Topology> topology;  // route before executing when set
  TermOrder term_order = TermOrder::Sweep;
  double from = 0.0;
  double to = 0.0;
  int n_points = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Run the full protocol once per grid point (independently seeded per point)
// and collect the final-cycle expectations. Points execute in parallel when
// threads > 1; results are identical for any thread count.
Spectrum sweep(const SweepSettings& settings);

bool has_internuclear(const SpinSystem& sys);

struct PeakFit {
  double height = 0.0;
  double center = 0.0;   // rad/us
  double sigma = 0.0;
  double baseline = 0.0;
  double residual = 0.0; // rms of the final residuals
  int iterations = 0;
};

// Least-squares fit of b + h exp(-(w-w0)^2 / (2 sigma^2)) to (x, y) samples.
// Initialization: center at the extremum, sigma from the half-max width,
// baseline from the edge median. Levenberg-Marquardt, relative parameter
// change < 1e-8 or 200 iterations. Throws on flat data or non-convergence.
PeakFit gaussian_fit(const std::vector<double>& x, const std::vector<double>& y);

// mean h/sigma over the fits; throws on sigma == 0 or empty input
double xi_metric(const std::vector<PeakFit>& fits);

// mean |(w_noisy - w_ideal) / w_ideal| over matched fits
double delta_peak_metric(const std::vector<PeakFit>& noisy,
                         const std::vector<PeakFit>& ideal);

// Partition of the sweep grid into per-peak windows: each local maximum of
// the reference curve is assigned to the nearest expected resonance, and
// window boundaries are the midpoints between consecutive resonances.
std::vector<std::pair<int, int>> peak_windows(const std::vector<double>& grid,
                                              const std::vector<double>& resonances);

// CSV with header omega_rad_per_us,qubit,observable,expectation
std::string spectrum_to_csv(const Spectrum& s);
Spectrum spectrum_from_csv(const std::string& text);

std::string peak_fits_to_json(const std::vector<PeakFit>& fits);

}  // namespace nanonmr
