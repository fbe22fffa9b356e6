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
#include <utility>

#include "nbcest/channel.hpp"
#include "nbcest/linalg.hpp"

namespace nbcest {

/// Running state of the sequential MMSE estimator: the current estimate,
/// its correlation matrix, the noise variance gamma (SNR = 1/gamma), and
/// the number of copies processed.
struct EstimatorState {
  CVec h_hat;
  CMat corr;
  double gamma = 1.0;
  std::size_t copies_processed = 0;
};

/// Per-update diagnostics. |zeta| always equals bessel_ratio.
struct UpdateDiagnostics {
  cplx zeta{0.0, 0.0};
  double bessel_ratio = 0.0;
  cplx inner_product{0.0, 0.0};  // r^dagger Rt h_hat
  double phase_estimate = 0.0;   // arg(inner_product), 0 when undefined
};

/// How the phase-compensation factor zeta is formed for one update.
/// Proposed scales the compensating unit phasor by the Bessel ratio
/// I1/I0 of 2|r^dagger Rt h_hat|/gamma; Traditional keeps the phasor at
/// unit modulus; Unit skips compensation entirely (no phase noise).
enum class ZetaRule { Proposed, Traditional, Unit };

/// h_hat = 0, corr = r0, copies_processed = 0. Validates r0 and gamma.
EstimatorState init_state(const CMat& r0, double gamma);

/// The zeta factor of the current state against a new copy:
/// Rt = (I + R/gamma)^{-1}, inner = r^dagger Rt h_hat,
/// zeta = (I1/I0)(2|inner|/gamma) * inner/|inner| (0 when inner = 0).
UpdateDiagnostics compute_zeta(const RepetitionCopy& r,
                               const EstimatorState& state);

/// One sequential update:
///   h_hat' = Rt (h_hat + (zeta/gamma) R r),  Rt = (I + R/gamma)^{-1}
///   R'     = R (I + R/gamma)^{-1}
/// The first copy (copies_processed = 0) always uses zeta = 1: the phase
/// of the first copy is the reference and the update reduces to the
/// standard MMSE step.
std::pair<EstimatorState, UpdateDiagnostics> update(const EstimatorState& s,
                                                    const RepetitionCopy& r,
                                                    ZetaRule rule);

std::pair<EstimatorState, UpdateDiagnostics> update_proposed(
    const EstimatorState& s, const RepetitionCopy& r);
std::pair<EstimatorState, UpdateDiagnostics> update_traditional(
    const EstimatorState& s, const RepetitionCopy& r);
/// zeta = 1 unconditionally; intended for runs without phase noise.
EstimatorState update_ideal(const EstimatorState& s, const RepetitionCopy& r);

/// R' = R (I + R/gamma)^{-1}. Shares eigenvectors with R; eigenvalues map
/// lambda -> lambda/(1 + lambda/gamma).
CMat update_correlation(const CMat& r, double gamma);

/// Phase estimate of one copy, arg(h_hat^dagger r) in (-pi, pi].
/// Throws std::domain_error when the inner product vanishes.
double estimate_phase(const CVec& h_hat, const RepetitionCopy& r);

/// Scalar estimator for the fully-correlated channel (R = v * 1_{KxK},
/// all gains equal). Closed form of the sequential update on the mean
/// observation rbar:
///   a      = gamma + v K
///   zeta2  = (I1/I0)(2 K |rbar hhat| / a) * conj(rbar) hhat / |rbar hhat|
///   hhat'  = (gamma hhat + zeta2 K v rbar) / a
///   v'     = v / (1 + K v / gamma)
/// With v = 1/K this is the constant-coefficient recursion
/// hhat' = (gamma hhat + zeta2 rbar)/(gamma + 1) with Bessel argument
/// 2 K |rbar hhat|/(gamma + 1). The first copy uses zeta2 = 1.
struct ScalarEstimate {
  cplx h_hat{0.0, 0.0};
  double variance = 1.0;
};

ScalarEstimate scalar_update_fully_correlated(const ScalarEstimate& s,
                                              double gamma,
                                              const RepetitionCopy& r);

}  // namespace nbcest
