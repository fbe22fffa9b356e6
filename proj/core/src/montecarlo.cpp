// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "nbcest/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace nbcest {

std::string to_string(EstimatorKind e) {
  switch (e) {
    case EstimatorKind::Proposed:
      return "proposed";
    case EstimatorKind::Traditional:
      return "traditional";
    case EstimatorKind::Ideal:
      return "ideal";
  }
  return "?";
}

std::string to_string(R0Init r) {
  return r == R0Init::Identity ? "identity" : "ideal_model";
}

void SimConfig::validate() const {
  if (snr_db_list.empty()) {
    throw std::invalid_argument("sim config: snr_db list must be nonempty");
  }
  for (double s : snr_db_list) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("sim config: non-finite SNR value");
    }
  }
  if (k == 0 || k > 64) {
    throw std::invalid_argument("sim config: K must be in [1, 64]");
  }
  if (num_copies == 0) {
    throw std::invalid_argument("sim config: num_copies must be >= 1");
  }
  if (num_realizations == 0) {
    throw std::invalid_argument("sim config: num_realizations must be >= 1");
  }
  if (estimators.empty()) {
    throw std::invalid_argument("sim config: no estimators selected");
  }
  if (threads == 0) {
    throw std::invalid_argument("sim config: threads must be >= 1");
  }
}

double MseCurve::at(EstimatorKind e, double snr, std::size_t copies) const {
  std::size_t ei = estimators.size();
  for (std::size_t i = 0; i < estimators.size(); ++i) {
    if (estimators[i] == e) ei = i;
  }
  std::size_t si = snr_db.size();
  for (std::size_t i = 0; i < snr_db.size(); ++i) {
    if (snr_db[i] == snr) si = i;
  }
  if (ei == estimators.size() || si == snr_db.size() || copies == 0 ||
      copies > num_copies) {
    throw std::out_of_range("MseCurve::at: no such cell");
  }
  return mse[ei][si][copies - 1];
}

double mse_metric(std::span<const PhasedVector> estimates,
                  std::span<const PhasedVector> truths, std::size_t k) {
  if (estimates.size() != truths.size() || estimates.empty()) {
    throw std::invalid_argument("mse_metric: realization count mismatch");
  }
  double acc = 0.0;
  for (std::size_t n = 0; n < estimates.size(); ++n) {
    if (estimates[n].h.size() != k || truths[n].h.size() != k) {
      throw std::invalid_argument("mse_metric: K mismatch");
    }
    const cplx re = std::polar(1.0, estimates[n].phi);
    const cplx rt = std::polar(1.0, truths[n].phi);
    for (std::size_t i = 0; i < k; ++i) {
      acc += std::norm(re * estimates[n].h[i] - rt * truths[n].h[i]);
    }
  }
  return acc / (static_cast<double>(estimates.size()) * static_cast<double>(k));
}

namespace {

ZetaRule rule_of(EstimatorKind e) {
  switch (e) {
    case EstimatorKind::Proposed:
      return ZetaRule::Proposed;
    case EstimatorKind::Traditional:
      return ZetaRule::Traditional;
    case EstimatorKind::Ideal:
      return ZetaRule::Unit;
  }
  return ZetaRule::Unit;
}

}  // namespace

MseCurve run_experiment(const SimConfig& cfg) {
  cfg.validate();
  const std::size_t k = cfg.k;
  const std::size_t copies = cfg.num_copies;
  const std::size_t nreal = cfg.num_realizations;
  const std::size_t nest = cfg.estimators.size();

  const CMat r_true = build_correlation(cfg.channel, k);
  const CMat factor = psd_factor(r_true);
  const CMat r0 =
      cfg.r0_init == R0Init::Identity ? CMat::identity(k) : r_true;

  MseCurve curve;
  curve.estimators = cfg.estimators;
  curve.snr_db = cfg.snr_db_list;
  curve.num_copies = copies;
  curve.mse.assign(nest, std::vector<std::vector<double>>(
                             cfg.snr_db_list.size(),
                             std::vector<double>(copies, 0.0)));

  for (std::size_t si = 0; si < cfg.snr_db_list.size(); ++si) {
    const double gamma = std::pow(10.0, -cfg.snr_db_list[si] / 10.0);

    // Per-realization squared errors, filled in parallel and reduced in
    // realization order so the sums are bit-identical for any thread
    // count.
    std::vector<double> errs(nreal * nest * copies, 0.0);

    const auto worker = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t n = lo; n < hi; ++n) {
        RandomStream rng = RandomStream::substream(cfg.seed, n);
        const CVec h = sample_channel_from_factor(factor, k, rng);

        std::vector<EstimatorState> states;
        states.reserve(nest);
        for (std::size_t e = 0; e < nest; ++e)
          states.push_back(init_state(r0, gamma));

        for (std::size_t m = 0; m < copies; ++m) {
          const double phi =
              (m == 0 || !cfg.phase_noise) ? 0.0 : rng.phase();
          const RepetitionCopy copy =
              make_repetition_copy(h, PhaseSample{phi}, gamma, m, rng);

          for (std::size_t e = 0; e < nest; ++e) {
            const EstimatorKind kind = cfg.estimators[e];
            states[e] = update(states[e], copy, rule_of(kind)).first;

            // Scoring phase: estimate_phase's arg(h_hat^dagger r), with
            // phi_hat = 0 for the first copy (the reference) and for the
            // ideal variant, which presumes no phase rotation at all.
            double phi_hat = 0.0;
            if (m > 0 && kind != EstimatorKind::Ideal) {
              const cplx ip = dot_conj(states[e].h_hat, copy.r);
              if (ip != cplx{0.0, 0.0}) phi_hat = std::arg(ip);
            }

            const cplx re = std::polar(1.0, phi_hat);
            const cplx rt = std::polar(1.0, phi);
            double err = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
              err += std::norm(re * states[e].h_hat[i] - rt * h[i]);
            }
            errs[(n * nest + e) * copies + m] = err;
          }
        }
      }
    };

    const std::size_t nthreads =
        std::min<std::size_t>(std::max(1u, cfg.threads), nreal);
    if (nthreads <= 1) {
      worker(0, nreal);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      const std::size_t chunk = (nreal + nthreads - 1) / nthreads;
      for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(nreal, lo + chunk);
        if (lo < hi) pool.emplace_back(worker, lo, hi);
      }
      for (std::thread& t : pool) t.join();
    }

    for (std::size_t e = 0; e < nest; ++e) {
      for (std::size_t m = 0; m < copies; ++m) {
        double acc = 0.0;
        for (std::size_t n = 0; n < nreal; ++n) {
          acc += errs[(n * nest + e) * copies + m];
        }
        curve.mse[e][si][m] =
            acc / (static_cast<double>(nreal) * static_cast<double>(k));
      }
    }
  }
  return curve;
}

}  // namespace nbcest
