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
#include <vector>

#include "nbcest/linalg.hpp"
#include "nbcest/random.hpp"

namespace nbcest {

/// One per-copy phase rotation, in [0, 2*pi).
struct PhaseSample {
  double phi = 0.0;
};

/// One least-squares channel observation r_m together with the true phase
/// it was generated with. The phase is hidden ground truth and is only
/// used for scoring, never by the estimators.
struct RepetitionCopy {
  CVec r;
  double true_phase = 0.0;
  std::size_t copy_index = 0;
};

enum class ChannelVariant { IidFlat, FullyCorrelated, EtuProfile };

/// Statistical channel model: IID flat gains, fully correlated gains, or a
/// tapped-delay-line profile that induces frequency correlation across the
/// reference subcarriers.
struct ChannelModelSpec {
  ChannelVariant variant = ChannelVariant::IidFlat;

  // EtuProfile parameters; defaults are the standard ETU delay line.
  std::vector<double> tap_delays_s;
  std::vector<double> tap_powers_db;
  double subcarrier_spacing_hz = 15e3;
  // Subcarrier index of each of the K observations; consecutive 0..K-1
  // when left empty.
  std::vector<int> subcarrier_indices;

  static ChannelModelSpec iid_flat();
  static ChannelModelSpec fully_correlated();
  /// Standard ETU profile: delays {0,50,120,200,230,500,1600,2300,5000} ns,
  /// powers {-1,-1,-1,0,0,0,-3,-5,-7} dB, 15 kHz subcarrier spacing.
  static ChannelModelSpec etu();
};

/// Checks the correlation-matrix invariants: Hermitian within herm_tol and
/// PSD within psd_tol. Throws std::invalid_argument on violation.
void validate_correlation(const CMat& r, double herm_tol = 1e-12,
                          double psd_tol = 1e-10);

/// Builds the K x K channel correlation matrix for the given model.
/// IidFlat -> identity, FullyCorrelated -> all-ones, EtuProfile ->
/// R[k,l] = sum_p P_p exp(-j 2 pi df (idx_k - idx_l) tau_p) with the tap
/// powers normalized to unit total, so the diagonal is one.
CMat build_correlation(const ChannelModelSpec& spec, std::size_t k);

/// Draws h = F z with F a PSD factor of R and z IID unit-variance
/// circularly-symmetric complex Gaussian. Consumes exactly K complex draws
/// regardless of the rank of R.
CVec sample_channel_from_factor(const CMat& factor, std::size_t k,
                                RandomStream& rng);
CVec sample_channel(const CMat& r, RandomStream& rng);

/// Uniform phase on [0, 2*pi).
PhaseSample sample_phase(RandomStream& rng);

/// r = e^{j phi} h + noise with IID circularly-symmetric complex Gaussian
/// noise of per-entry variance gamma. Pass noise_enabled = false for the
/// noiseless limit (no draws are consumed then).
RepetitionCopy make_repetition_copy(const CVec& h, PhaseSample phi,
                                    double gamma, std::size_t copy_index,
                                    RandomStream& rng,
                                    bool noise_enabled = true);

}  // namespace nbcest
