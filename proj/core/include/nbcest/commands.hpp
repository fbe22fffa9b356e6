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
#include <optional>
#include <string>

namespace nbcest {

/// Options shared by all subcommands; flags override config values.
struct CommandOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::size_t> copy_index;  // sweep only
};

/// simulate: MSE vs copy index. Writes mse_vs_copy.csv with header
/// estimator,snr_db,copy_index,mse,mse_db plus run_manifest.txt.
void cmd_simulate(const CommandOptions& opt);

/// sweep: MSE vs SNR at one fixed copy index, covering every requested R0
/// initialization. Writes mse_vs_snr.csv with header
/// estimator,r0_init,snr_db,mse_db plus run_manifest.txt.
void cmd_sweep(const CommandOptions& opt);

/// validate-waveform: per-symbol common-phase-error statistics. Writes
/// cpe_stats.csv with header trial,cpe_modulus,cpe_phase, a trailing
/// summary comment line, plus run_manifest.txt.
void cmd_validate_waveform(const CommandOptions& opt);

}  // namespace nbcest
