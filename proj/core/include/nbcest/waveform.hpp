// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nbcest/linalg.hpp"
#include "nbcest/random.hpp"

namespace nbcest {

/// Time-domain OFDM validation path: generates phase-noise and
/// frequency-offset impaired symbols and checks that the per-symbol
/// common phase error behaves like a single rotation e^{j phi}.
///
/// Index conventions: subcarriers k and sample times n both run over
/// [-N/2, N/2-1]; arrays store index i = n + N/2 (resp. j = k + N/2).
struct WaveformConfig {
  std::size_t fft_size = 128;
  std::vector<int> active_subcarriers;  // defaults to the middle 12
  double residual_fo = 0.0;       // normalized by the subcarrier spacing
  double phase_noise_std = 0.0;   // Wiener increment std, rad per sample
  double noise_var = 0.0;
  double initial_phase = 0.0;

  std::vector<int> active_or_default() const;
  void validate() const;
};

/// Returns `count` consecutive subcarrier indices centered on DC.
std::vector<int> middle_subcarriers(std::size_t fft_size, std::size_t count);

struct OfdmSymbol {
  CVec tx_grid;                     // length N
  CVec time_samples;                // length N
  std::vector<double> phase_stream; // length N, phi at each sample time
};

/// Wiener phase trajectory over one symbol: phi[0] = initial_phase,
/// phi[i] = phi[i-1] + N(0, phase_noise_std^2).
std::vector<double> sample_phase_stream(const WaveformConfig& cfg,
                                        RandomStream& rng);

/// Time-domain samples of one impaired OFDM symbol:
/// s[n] = e^{j phi[n]} ((1/sqrt(N)) sum_k S[k] e^{j 2 pi n (f_e + k)/N}
///        (*) h)[n] + w[n]
/// with linear convolution over the isolated symbol and AWGN of variance
/// noise_var. The grid must be zero outside the active subcarriers.
OfdmSymbol generate_ofdm_symbol(const WaveformConfig& cfg, const CVec& grid,
                                const CVec& h_taps, RandomStream& rng);

/// Unitary FFT back to the subcarrier grid:
/// S[k] = (1/sqrt(N)) sum_n s[n] e^{-j 2 pi n k / N}.
CVec demodulate(const CVec& time_samples);
CVec demodulate(const OfdmSymbol& sym);

/// The common-phase-error term of one symbol,
/// (1/N) sum_n e^{j(phi[n] + 2 pi n f_e / N)}.
/// Equals exactly 1 with zero phase noise and zero frequency offset.
cplx compute_cpe_term(std::span<const double> phase_stream, double residual_fo,
                      std::size_t fft_size);

/// Least-squares channel observations r[k] = rx[k] / ref[k] on the
/// reference subcarriers. References must be nonzero (unit modulus in
/// normal use).
CVec ls_extract(const CVec& rx_ref_bins, const CVec& tx_refs);

/// Picks the bins of the listed subcarriers out of a full grid.
CVec extract_bins(const CVec& grid, const std::vector<int>& subcarriers);

}  // namespace nbcest
