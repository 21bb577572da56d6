// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace nanonmr {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// All couplings and frequencies are angular, in rad/us. Times are in us,
// magnetic fields in Tesla, positions in nm.

// 13C gyromagnetic ratio, rad/(us*T): (2*pi) x 10.7 MHz/T.
inline constexpr double kGammaC13 = kTwoPi * 10.7;

// Dipolar prefactors for the geometric coupling formulas, in rad/us * nm^3.
// The NV-nucleus hyperfine vector is
//   A(r) = kDipolarEN / (2 |r|^3) * [ z_hat - 3 (z_hat . r_hat) r_hat ]
// and the secular internuclear coupling is
//   g(r) = kDipolarNN / (2 |r|^3) * [ 1 - 3 (r_z / |r|)^2 ].
// Defaults follow from hbar * mu0/(4pi) * gamma_e * gamma_c (electron
// gamma_e = 1.76085963e11 rad/(s*T), gamma_c as above), so that a nucleus
// 1 nm from the NV on the z axis sees ~2pi x 40 kHz. Both are configurable
// on the geometry input.
inline constexpr double kDipolarEN = 0.24968620;
inline constexpr double kDipolarNN = 9.5330834e-5;

}  // namespace nanonmr
