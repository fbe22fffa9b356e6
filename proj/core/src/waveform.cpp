// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "nbcest/waveform.hpp"

#include <cmath>
#include <stdexcept>

namespace nbcest {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// Iterative radix-2 transform, unnormalized; sign = -1 for the forward
// kernel e^{-j 2 pi n k / N}.
void fft_inplace(CVec& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const cplx wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      cplx w = 1.0;
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Swap halves: maps array position i (sample/bin index i - N/2) to the
// mod-N position used by the standard transform, and back. N is even.
CVec half_swap(const CVec& a) {
  const std::size_t n = a.size();
  CVec out(n);
  for (std::size_t i = 0; i < n; ++i) out[(i + n / 2) % n] = a[i];
  return out;
}

}  // namespace

std::vector<int> middle_subcarriers(std::size_t fft_size, std::size_t count) {
  if (count > fft_size) {
    throw std::invalid_argument("middle_subcarriers: count exceeds FFT size");
  }
  std::vector<int> idx(count);
  const int start = -static_cast<int>(count) / 2;
  for (std::size_t i = 0; i < count; ++i) idx[i] = start + static_cast<int>(i);
  return idx;
}

std::vector<int> WaveformConfig::active_or_default() const {
  if (!active_subcarriers.empty()) return active_subcarriers;
  return middle_subcarriers(fft_size, std::min<std::size_t>(12, fft_size));
}

void WaveformConfig::validate() const {
  if (!is_power_of_two(fft_size)) {
    throw std::invalid_argument(
        "waveform: fft_size must be a power of two, >= 2");
  }
  if (!std::isfinite(residual_fo)) {
    throw std::invalid_argument("waveform: residual_fo must be finite");
  }
  if (!(phase_noise_std >= 0.0) || !std::isfinite(phase_noise_std)) {
    throw std::invalid_argument("waveform: phase_noise_std must be >= 0");
  }
  if (!(noise_var >= 0.0) || !std::isfinite(noise_var)) {
    throw std::invalid_argument("waveform: noise_var must be >= 0");
  }
  const int half = static_cast<int>(fft_size) / 2;
  const std::vector<int> active = active_or_default();
  if (active.size() > fft_size) {
    throw std::invalid_argument("waveform: too many active subcarriers");
  }
  for (int k : active) {
    if (k < -half || k >= half) {
      throw std::invalid_argument(
          "waveform: active subcarrier index out of [-N/2, N/2-1]");
    }
  }
}

std::vector<double> sample_phase_stream(const WaveformConfig& cfg,
                                        RandomStream& rng) {
  std::vector<double> phi(cfg.fft_size);
  double acc = cfg.initial_phase;
  for (std::size_t i = 0; i < cfg.fft_size; ++i) {
    if (i > 0 && cfg.phase_noise_std > 0.0)
      acc += rng.gaussian(cfg.phase_noise_std);
    phi[i] = acc;
  }
  return phi;
}

OfdmSymbol generate_ofdm_symbol(const WaveformConfig& cfg, const CVec& grid,
                                const CVec& h_taps, RandomStream& rng) {
  cfg.validate();
  const std::size_t n = cfg.fft_size;
  if (grid.size() != n) {
    throw std::invalid_argument("generate_ofdm_symbol: grid length != N");
  }
  if (h_taps.empty()) {
    throw std::invalid_argument("generate_ofdm_symbol: empty channel taps");
  }

  const std::vector<int> active = cfg.active_or_default();
  std::vector<bool> is_active(n, false);
  const int half = static_cast<int>(n) / 2;
  for (int k : active) is_active[static_cast<std::size_t>(k + half)] = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_active[j] && grid[j] != cplx{0.0, 0.0}) {
      throw std::invalid_argument(
          "generate_ofdm_symbol: energy on inactive subcarrier");
    }
  }

  // (1/sqrt(N)) sum_k S[k] e^{j 2 pi n k / N} via the standard inverse
  // transform on mod-N relabeled bins.
  CVec x = half_swap(grid);
  fft_inplace(x, +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (cplx& v : x) v *= scale;
  x = half_swap(x);  // back to array position i = n_time + N/2

  // residual frequency offset, applied with the physical sample index
  if (cfg.residual_fo != 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double tn = static_cast<double>(static_cast<int>(i) - half);
      x[i] *= std::polar(1.0, kTwoPi * tn * cfg.residual_fo /
                                  static_cast<double>(n));
    }
  }

  // linear convolution over the isolated symbol (zero outside)
  CVec conv(n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = 0.0;
    const std::size_t pmax = std::min(h_taps.size() - 1, i);
    for (std::size_t p = 0; p <= pmax; ++p) acc += h_taps[p] * x[i - p];
    conv[i] = acc;
  }

  OfdmSymbol sym;
  sym.tx_grid = grid;
  sym.phase_stream = sample_phase_stream(cfg, rng);
  sym.time_samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx v = std::polar(1.0, sym.phase_stream[i]) * conv[i];
    if (cfg.noise_var > 0.0) v += rng.cgaussian(cfg.noise_var);
    sym.time_samples[i] = v;
  }
  return sym;
}

CVec demodulate(const CVec& time_samples) {
  const std::size_t n = time_samples.size();
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("demodulate: length must be a power of two");
  }
  CVec u = half_swap(time_samples);
  fft_inplace(u, -1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (cplx& v : u) v *= scale;
  return half_swap(u);
}

CVec demodulate(const OfdmSymbol& sym) { return demodulate(sym.time_samples); }

cplx compute_cpe_term(std::span<const double> phase_stream, double residual_fo,
                      std::size_t fft_size) {
  if (phase_stream.size() != fft_size) {
    throw std::invalid_argument("compute_cpe_term: stream length != N");
  }
  const int half = static_cast<int>(fft_size) / 2;
  cplx acc = 0.0;
  for (std::size_t i = 0; i < fft_size; ++i) {
    const double tn = static_cast<double>(static_cast<int>(i) - half);
    acc += std::polar(1.0, phase_stream[i] +
                               kTwoPi * tn * residual_fo /
                                   static_cast<double>(fft_size));
  }
  return acc / static_cast<double>(fft_size);
}

CVec ls_extract(const CVec& rx_ref_bins, const CVec& tx_refs) {
  if (rx_ref_bins.size() != tx_refs.size()) {
    throw std::invalid_argument("ls_extract: length mismatch");
  }
  CVec r(rx_ref_bins.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (tx_refs[i] == cplx{0.0, 0.0}) {
      throw std::invalid_argument("ls_extract: zero reference symbol");
    }
    r[i] = rx_ref_bins[i] / tx_refs[i];
  }
  return r;
}

CVec extract_bins(const CVec& grid, const std::vector<int>& subcarriers) {
  const std::size_t n = grid.size();
  const int half = static_cast<int>(n) / 2;
  CVec out;
  out.reserve(subcarriers.size());
  for (int k : subcarriers) {
    if (k < -half || k >= half) {
      throw std::invalid_argument("extract_bins: subcarrier out of range");
    }
    out.push_back(grid[static_cast<std::size_t>(k + half)]);
  }
  return out;
}

}  // namespace nbcest
