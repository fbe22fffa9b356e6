// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cstdint>
#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "nbcest/commands.hpp"
#include "nbcest/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo simulator for sequential MMSE channel estimation "
               "under per-copy random phase noise"};
  app.set_version_flag("--version", std::string("nbcest ") + nbcest::kVersion);
  app.require_subcommand(1);

  nbcest::CommandOptions opt;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t copy_index = 0;

  const auto add_common = [&](CLI::App* cmd, bool takes_threads) {
    cmd->add_option("--config", opt.config_path, "configuration file")
        ->required();
    cmd->add_option("--out", opt.out_dir, "output directory")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "override the config seed");
    if (takes_threads) {
      cmd->add_option("--threads", threads,
                      "parallel width (results identical)");
    }
  };

  CLI::App* simulate =
      app.add_subcommand("simulate", "MSE vs repetition copy index");
  add_common(simulate, true);

  CLI::App* sweep =
      app.add_subcommand("sweep", "MSE vs SNR at one fixed copy index");
  add_common(sweep, true);
  sweep->add_option("--copy-index", copy_index,
                    "copy index to report (default: num_copies)");

  CLI::App* validate = app.add_subcommand(
      "validate-waveform", "per-symbol common-phase-error statistics");
  add_common(validate, false);

  CLI11_PARSE(app, argc, argv);

  if (simulate->count("--seed") || sweep->count("--seed") ||
      validate->count("--seed")) {
    opt.seed = seed;
  }
  if (simulate->count("--threads") || sweep->count("--threads")) {
    opt.threads = threads;
  }
  if (sweep->count("--copy-index")) opt.copy_index = copy_index;

  try {
    if (simulate->parsed()) {
      nbcest::cmd_simulate(opt);
    } else if (sweep->parsed()) {
      nbcest::cmd_sweep(opt);
    } else if (validate->parsed()) {
      nbcest::cmd_validate_waveform(opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
