// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace nbcest {

/// Seeded random stream with explicit substream derivation.
///
/// Every Monte-Carlo realization owns its own stream derived from
/// (global_seed, realization_index), so results are independent of
/// execution order and thread count. Gaussian and uniform variates are
/// generated from raw 64-bit engine output instead of the standard
/// distributions, which keeps the draw sequence stable across standard
/// library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix(seed)) {}

  static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(mix(seed + 0x9e3779b97f4a7c15ull * (index + 1)));
  }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_positive() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform phase on [0, 2*pi).
  double phase() { return 6.283185307179586476925286766559 * uniform(); }

  /// Real N(0, stddev^2) via Box-Muller.
  double gaussian(double stddev) {
    const double amp = std::sqrt(-2.0 * std::log(uniform_positive()));
    return stddev * amp * std::cos(phase());
  }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> cgaussian(double variance) {
    const double amp = std::sqrt(-variance * std::log(uniform_positive()));
    return std::polar(amp, phase());
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace nbcest
