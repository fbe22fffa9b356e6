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
#include <vector>

#include <doctest.h>

using namespace nbcest;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.snr_db_list = {0.0, -4.0};
  cfg.k = 2;
  cfg.num_copies = 4;
  cfg.num_realizations = 8;
  cfg.seed = 321;
  cfg.channel = ChannelModelSpec::iid_flat();
  cfg.phase_noise = true;
  cfg.estimators = {EstimatorKind::Proposed, EstimatorKind::Traditional,
                    EstimatorKind::Ideal};
  cfg.r0_init = R0Init::Identity;
  return cfg;
}

}  // namespace

TEST_CASE("mse_metric direct arithmetic") {
  SUBCASE("perfect estimation scores zero") {
    const std::vector<PhasedVector> est{{CVec{cplx{1.0, 2.0}}, 0.7}};
    CHECK(mse_metric(est, est, 1) == 0.0);
  }
  SUBCASE("unit versus j is |1-j|^2 = 2") {
    const std::vector<PhasedVector> est{{CVec{cplx{1.0, 0.0}}, 0.0}};
    const std::vector<PhasedVector> truth{
        {CVec{cplx{1.0, 0.0}}, 1.5707963267948966}};
    CHECK(mse_metric(est, truth, 1) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("antipodal phase error scores 4x the channel power") {
    const CVec h{cplx{1.0, 1.0}, cplx{0.0, -2.0}};
    const std::vector<PhasedVector> est{{h, 0.4 + 3.14159265358979323846}};
    const std::vector<PhasedVector> truth{{h, 0.4}};
    const double power = squared_norm(h) / 2.0;
    CHECK(mse_metric(est, truth, 2) ==
          doctest::Approx(4.0 * power).epsilon(1e-12));
  }
  SUBCASE("mismatched sizes throw") {
    const std::vector<PhasedVector> est{{CVec{cplx{1.0, 0.0}}, 0.0}};
    const std::vector<PhasedVector> truth;
    CHECK_THROWS_AS(mse_metric(est, truth, 1), std::invalid_argument);
  }
}

TEST_CASE("run_experiment is deterministic and thread-invariant") {
  const SimConfig cfg = small_config();
  const MseCurve a = run_experiment(cfg);
  const MseCurve b = run_experiment(cfg);
  CHECK(a.mse == b.mse);

  SimConfig threaded = cfg;
  threaded.threads = 4;
  const MseCurve c = run_experiment(threaded);
  CHECK(a.mse == c.mse);

  SimConfig reseeded = cfg;
  reseeded.seed += 1;
  const MseCurve d = run_experiment(reseeded);
  CHECK(a.mse != d.mse);
}

TEST_CASE("run_experiment equals a hand-driven loop over the estimator ops") {
  const SimConfig cfg = small_config();
  const MseCurve got = run_experiment(cfg);

  const CMat r_true = build_correlation(cfg.channel, cfg.k);
  const CMat factor = psd_factor(r_true);
  for (std::size_t si = 0; si < cfg.snr_db_list.size(); ++si) {
    const double gamma = std::pow(10.0, -cfg.snr_db_list[si] / 10.0);
    // estimates[e][m][n], truths[m][n]
    std::vector<std::vector<std::vector<PhasedVector>>> estimates(
        cfg.estimators.size(),
        std::vector<std::vector<PhasedVector>>(cfg.num_copies));
    std::vector<std::vector<PhasedVector>> truths(cfg.num_copies);

    for (std::size_t n = 0; n < cfg.num_realizations; ++n) {
      RandomStream rng = RandomStream::substream(cfg.seed, n);
      const CVec h = sample_channel_from_factor(factor, cfg.k, rng);
      std::vector<EstimatorState> states;
      for (std::size_t e = 0; e < cfg.estimators.size(); ++e)
        states.push_back(init_state(CMat::identity(cfg.k), gamma));
      for (std::size_t m = 0; m < cfg.num_copies; ++m) {
        const double phi = (m == 0 || !cfg.phase_noise) ? 0.0 : rng.phase();
        const RepetitionCopy copy =
            make_repetition_copy(h, PhaseSample{phi}, gamma, m, rng);
        truths[m].push_back(PhasedVector{h, phi});
        for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
          switch (cfg.estimators[e]) {
            case EstimatorKind::Proposed:
              states[e] = update_proposed(states[e], copy).first;
              break;
            case EstimatorKind::Traditional:
              states[e] = update_traditional(states[e], copy).first;
              break;
            case EstimatorKind::Ideal:
              states[e] = update_ideal(states[e], copy);
              break;
          }
          double phi_hat = 0.0;
          if (m > 0 && cfg.estimators[e] != EstimatorKind::Ideal) {
            phi_hat = estimate_phase(states[e].h_hat, copy);
          }
          estimates[e][m].push_back(PhasedVector{states[e].h_hat, phi_hat});
        }
      }
    }

    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      for (std::size_t m = 0; m < cfg.num_copies; ++m) {
        const double want = mse_metric(estimates[e][m], truths[m], cfg.k);
        CHECK(std::fabs(got.mse[e][si][m] - want) < 1e-14);
      }
    }
  }
}

TEST_CASE("ideal no-phase-noise curve matches gamma/(gamma+m)") {
  SimConfig cfg;
  cfg.snr_db_list = {0.0};
  cfg.k = 12;
  cfg.num_copies = 20;
  cfg.num_realizations = 20000;
  cfg.seed = 7;
  cfg.phase_noise = false;
  cfg.estimators = {EstimatorKind::Ideal};
  cfg.r0_init = R0Init::Identity;
  cfg.threads = 2;
  const MseCurve curve = run_experiment(cfg);
  const double gamma = 1.0;
  for (std::size_t m = 1; m <= cfg.num_copies; ++m) {
    const double want = gamma / (gamma + static_cast<double>(m));
    CHECK(curve.at(EstimatorKind::Ideal, 0.0, m) ==
          doctest::Approx(want).epsilon(0.03));
  }
}

TEST_CASE("ideal no-phase-noise MSE decreases monotonically") {
  SimConfig cfg;
  cfg.snr_db_list = {0.0};
  cfg.k = 12;
  cfg.num_copies = 20;
  cfg.num_realizations = 2000;
  cfg.seed = 11;
  cfg.phase_noise = false;
  cfg.estimators = {EstimatorKind::Ideal};
  cfg.r0_init = R0Init::Identity;
  const MseCurve curve = run_experiment(cfg);
  for (std::size_t m = 1; m < cfg.num_copies; ++m) {
    CHECK(curve.at(EstimatorKind::Ideal, 0.0, m + 1) <
          curve.at(EstimatorKind::Ideal, 0.0, m));
  }
}

TEST_CASE("proposed dominates traditional under common random numbers") {
  SimConfig cfg;
  cfg.snr_db_list = {-4.0, 0.0};
  cfg.k = 12;
  cfg.num_copies = 20;
  cfg.num_realizations = 500;
  cfg.seed = 13;
  cfg.phase_noise = true;
  cfg.estimators = {EstimatorKind::Proposed, EstimatorKind::Traditional};
  cfg.r0_init = R0Init::Identity;
  const MseCurve curve = run_experiment(cfg);
  for (double snr : cfg.snr_db_list) {
    for (std::size_t m = 1; m <= cfg.num_copies; ++m) {
      const double prop = curve.at(EstimatorKind::Proposed, snr, m);
      const double trad = curve.at(EstimatorKind::Traditional, snr, m);
      if (m == 2) {
        // At the second copy the traditional update overfits the very
        // copy the metric scores against (its full-weight blend of r_2
        // drags the phase estimate along), which buys it a transient
        // few-percent advantage. From the third copy on the proposed
        // estimator dominates.
        CHECK(prop <= trad * 1.035);
      } else {
        CHECK(prop <= trad * 1.02 + 1e-12);
      }
    }
  }
}

TEST_CASE("phase noise causes an error floor; the ideal curve keeps falling") {
  SimConfig cfg;
  cfg.snr_db_list = {0.0};
  cfg.k = 4;
  cfg.num_copies = 20;
  cfg.num_realizations = 2000;
  cfg.seed = 17;
  cfg.phase_noise = true;
  cfg.estimators = {EstimatorKind::Proposed};
  cfg.r0_init = R0Init::Identity;
  const MseCurve noisy = run_experiment(cfg);
  const double m15 = noisy.at(EstimatorKind::Proposed, 0.0, 15);
  const double m20 = noisy.at(EstimatorKind::Proposed, 0.0, 20);
  CHECK(std::fabs(m20 - m15) < 0.1 * m15);

  SimConfig clean = cfg;
  clean.phase_noise = false;
  clean.estimators = {EstimatorKind::Ideal};
  const MseCurve ideal = run_experiment(clean);
  const double gamma = 1.0;
  const double ratio = ideal.at(EstimatorKind::Ideal, 0.0, 20) /
                       ideal.at(EstimatorKind::Ideal, 0.0, 15);
  CHECK(ratio ==
        doctest::Approx((gamma + 15.0) / (gamma + 20.0)).epsilon(0.05));
}

TEST_CASE("all estimators coincide on the first copy") {
  const SimConfig cfg = small_config();
  const MseCurve curve = run_experiment(cfg);
  for (double snr : cfg.snr_db_list) {
    const double a = curve.at(EstimatorKind::Proposed, snr, 1);
    const double b = curve.at(EstimatorKind::Traditional, snr, 1);
    const double c = curve.at(EstimatorKind::Ideal, snr, 1);
    CHECK(a == b);
    CHECK(b == c);
  }
}

TEST_CASE("MseCurve::at rejects unknown cells") {
  const MseCurve curve = run_experiment(small_config());
  CHECK_THROWS_AS(curve.at(EstimatorKind::Proposed, 3.0, 1),
                  std::out_of_range);
  CHECK_THROWS_AS(curve.at(EstimatorKind::Proposed, 0.0, 0),
                  std::out_of_range);
  CHECK_THROWS_AS(curve.at(EstimatorKind::Proposed, 0.0, 5),
                  std::out_of_range);
}

TEST_CASE("config validation") {
  SimConfig cfg = small_config();
  cfg.snr_db_list.clear();
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.num_realizations = 0;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.estimators.clear();
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.num_copies = 0;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.k = 65;  // dense small-matrix envelope
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
