// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

namespace nanonmr {

// splitmix64; used both as a standalone generator and to derive independent
// per-task seeds from a master seed.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// Seed-splitting rule: task i of a run with master seed s is seeded with
// derive_seed(s, i). Counter-based, so parallel tasks are independent of
// scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 mix(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  mix.next();
  return mix.next();
}

// Deterministic RNG with uniform and normal draws. Box-Muller is hand-rolled
// so that streams are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_.next(); }

  // uniform double in [0, 1)
  double uniform() { return static_cast<double>(gen_.next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // index in [0, n)
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // standard normal, Box-Muller with caching
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(kTau * u2);
    have_cached_ = true;
    return r * std::cos(kTau * u2);
  }

 private:
  static constexpr double kTau = 6.28318530717958647692;
  SplitMix64 gen_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace nanonmr
