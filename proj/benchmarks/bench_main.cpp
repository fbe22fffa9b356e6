// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <benchmark/benchmark.h>

#include "nbcest/bessel.hpp"
#include "nbcest/estimator.hpp"
#include "nbcest/montecarlo.hpp"
#include "nbcest/random.hpp"

using namespace nbcest;

static void BM_BesselRatio(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel::i1_over_i0(x));
  }
}
BENCHMARK(BM_BesselRatio)->Arg(1)->Arg(10)->Arg(100)->Arg(100000);

static void BM_UpdateProposed(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  RandomStream rng(1);
  EstimatorState s = init_state(build_correlation(ChannelModelSpec::etu(), k),
                                1.0);
  RepetitionCopy copy;
  copy.r.resize(k);
  for (cplx& v : copy.r) v = rng.cgaussian(1.0);
  copy.copy_index = 1;
  s.copies_processed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(update_proposed(s, copy));
  }
}
BENCHMARK(BM_UpdateProposed)->Arg(4)->Arg(12)->Arg(48);

static void BM_CorrelationUpdate(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  const CMat r = build_correlation(ChannelModelSpec::etu(), k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(update_correlation(r, 1.0));
  }
}
BENCHMARK(BM_CorrelationUpdate)->Arg(12)->Arg(48);

static void BM_RunExperiment(benchmark::State& state) {
  SimConfig cfg;
  cfg.snr_db_list = {-4.0};
  cfg.k = 12;
  cfg.num_copies = 10;
  cfg.num_realizations = static_cast<std::size_t>(state.range(0));
  cfg.seed = 9;
  cfg.channel = ChannelModelSpec::etu();
  cfg.estimators = {EstimatorKind::Proposed, EstimatorKind::Traditional};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(cfg));
  }
}
BENCHMARK(BM_RunExperiment)->Unit(benchmark::kMillisecond)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
