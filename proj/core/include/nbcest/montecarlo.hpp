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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nbcest/channel.hpp"
#include "nbcest/estimator.hpp"

namespace nbcest {

enum class EstimatorKind { Proposed, Traditional, Ideal };
enum class R0Init { Identity, IdealModel };

std::string to_string(EstimatorKind e);
std::string to_string(R0Init r);

/// One Monte-Carlo experiment: sweep the SNR list, drive every selected
/// estimator over num_copies repetition copies of num_realizations
/// independent channel draws, and record the MSE after each copy.
struct SimConfig {
  std::vector<double> snr_db_list{-4.0, -2.0, 0.0};
  std::size_t k = 12;
  std::size_t num_copies = 20;
  std::size_t num_realizations = 2000;
  std::uint64_t seed = 1;
  ChannelModelSpec channel;
  bool phase_noise = true;
  std::vector<EstimatorKind> estimators{EstimatorKind::Proposed,
                                        EstimatorKind::Traditional,
                                        EstimatorKind::Ideal};
  R0Init r0_init = R0Init::IdealModel;
  unsigned threads = 1;

  void validate() const;  // throws std::invalid_argument
};

/// MSE(m) per estimator and SNR, m = 1..num_copies counting processed
/// copies: the MSE measured right after the mth repetition copy.
struct MseCurve {
  std::vector<EstimatorKind> estimators;
  std::vector<double> snr_db;
  std::size_t num_copies = 0;
  // mse[e][s][m-1]
  std::vector<std::vector<std::vector<double>>> mse;

  double at(EstimatorKind e, double snr, std::size_t copies) const;
};

/// One scored estimate or truth: a channel vector with its phase.
struct PhasedVector {
  CVec h;
  double phi = 0.0;
};

/// MSE(m) = (1/(N K)) sum_n || hhat_n e^{j phihat_n} - h_n e^{j phi_n} ||^2.
double mse_metric(std::span<const PhasedVector> estimates,
                  std::span<const PhasedVector> truths, std::size_t k);

/// Runs the experiment. For each realization one channel is drawn and held
/// fixed (coherent-time assumption); every copy gets a fresh phase (0 for
/// the first copy or when phase noise is disabled) and fresh noise. All
/// selected estimators see the same copies (common random numbers), and
/// realization n always uses substream(seed, n), so the result is
/// bit-identical for any thread count.
MseCurve run_experiment(const SimConfig& cfg);

}  // namespace nbcest
