#pragma once

// Seeded, resolution-independent random field generation.
//
// Spectral coefficients are drawn per integer wavevector with a SplitMix64
// counter keyed on (seed, mode), so the same (seed, cutoff) reproduces the
// same *function* at any resolution that contains the cutoff, and a
// reimplementation in another language can match it bit for bit. The scheme:
//
//   mix(z): z += 0x9E3779B97F4A7C15;
//           z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//           z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//           return z ^ (z >> 31)
//
//   key(seed, m) = fold mix over seed, then each signed mode component + a
//   per-component tag; two consecutive mix outputs give uniform doubles in
//   [0,1) (53-bit), mapped to a Gaussian pair by Box-Muller.
//
// Fields are normalised to a requested real-space RMS amplitude. All
// generators keep the zero mode at 0 (means are added separately).

#include <cstdint>

#include "nspfc/field.hpp"

namespace nspfc {

std::uint64_t splitmix64(std::uint64_t z);

// Mean-free random trigonometric polynomial with per-axis |mode| <= cutoff
// and real-space RMS equal to amplitude (exactly zero field if amplitude 0).
ScalarField random_smooth_field(GridPtr grid, double amplitude, int cutoff, std::uint64_t seed);

// constant + random_smooth_field; <phi> equals mean exactly.
ScalarField constant_plus_noise(GridPtr grid, double mean, double amplitude, int cutoff,
                                std::uint64_t seed);

// amplitude * cos(2 pi m.x / L) for an integer mode vector m.
ScalarField single_mode(GridPtr grid, const std::array<int, 3>& mode, double amplitude);

// Leray projection of per-component random smooth fields, rescaled so the
// real-space RMS of |u| equals amplitude. Divergence-free with zero mean.
VectorField random_solenoidal(GridPtr grid, double amplitude, int cutoff, std::uint64_t seed);

} // namespace nspfc
