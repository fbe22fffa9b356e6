// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "nbcest/commands.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "nbcest/config.hpp"
#include "nbcest/version.hpp"

namespace nbcest {

namespace {

// at least 9 significant digits, finite values only
std::string fmt_csv(double v) {
  if (!std::isfinite(v)) {
    throw std::runtime_error("csv: refusing to write a non-finite value");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double to_db(double linear) {
  return 10.0 * std::log10(std::max(linear, DBL_MIN));
}

std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);  // LF line endings everywhere
  if (!out) {
    throw std::runtime_error("cannot open output file: " + p.string());
  }
  return out;
}

void write_manifest(const std::filesystem::path& dir,
                    const CommandOptions& opt, const std::string& command,
                    const std::string& resolved_config) {
  std::ofstream out = open_output(dir / "run_manifest.txt");
  out << "# nbcest run manifest\n";
  out << "# tool_version: " << kVersion << "\n";
  out << "# command: " << command << "\n";
  out << "# config: " << opt.config_path << "\n";
  out << "# output_dir: " << opt.out_dir << "\n";
  out << resolved_config;
  if (!out) throw std::runtime_error("failed writing run_manifest.txt");
}

SimFileConfig load_sim_config(const CommandOptions& opt) {
  SimFileConfig cfg =
      parse_sim_config(KeyValueFile::parse_file(opt.config_path));
  if (opt.seed) cfg.sim.seed = *opt.seed;
  if (opt.threads) cfg.sim.threads = *opt.threads;
  return cfg;
}

std::filesystem::path prepare_out_dir(const CommandOptions& opt) {
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

void cmd_simulate(const CommandOptions& opt) {
  SimFileConfig cfg = load_sim_config(opt);
  if (cfg.r0_modes.size() != 1) {
    throw std::runtime_error(
        "simulate: exactly one r0_init mode is expected (use sweep to cover "
        "both)");
  }
  const std::filesystem::path dir = prepare_out_dir(opt);
  const MseCurve curve = run_experiment(cfg.sim);

  std::ofstream out = open_output(dir / "mse_vs_copy.csv");
  out << "estimator,snr_db,copy_index,mse,mse_db\n";
  for (std::size_t e = 0; e < curve.estimators.size(); ++e) {
    for (std::size_t s = 0; s < curve.snr_db.size(); ++s) {
      for (std::size_t m = 1; m <= curve.num_copies; ++m) {
        const double mse = curve.mse[e][s][m - 1];
        out << to_string(curve.estimators[e]) << "," << fmt_csv(curve.snr_db[s])
            << "," << m << "," << fmt_csv(mse) << "," << fmt_csv(to_db(mse))
            << "\n";
      }
    }
  }
  if (!out) throw std::runtime_error("failed writing mse_vs_copy.csv");
  out.close();

  write_manifest(dir, opt, "simulate", serialize_sim_config(cfg));
}

void cmd_sweep(const CommandOptions& opt) {
  SimFileConfig cfg = load_sim_config(opt);
  const std::size_t copy_index =
      opt.copy_index.value_or(cfg.sim.num_copies);
  if (copy_index == 0 || copy_index > cfg.sim.num_copies) {
    throw std::runtime_error(
        "sweep: copy index must be in [1, num_copies], got " +
        std::to_string(copy_index));
  }
  const std::filesystem::path dir = prepare_out_dir(opt);

  // One experiment per requested R0 initialization; estimators and SNRs
  // come from the shared config.
  std::vector<MseCurve> curves;
  for (R0Init mode : cfg.r0_modes) {
    SimConfig sim = cfg.sim;
    sim.r0_init = mode;
    curves.push_back(run_experiment(sim));
  }

  std::ofstream out = open_output(dir / "mse_vs_snr.csv");
  out << "estimator,r0_init,snr_db,mse_db\n";
  for (std::size_t e = 0; e < cfg.sim.estimators.size(); ++e) {
    for (std::size_t r = 0; r < cfg.r0_modes.size(); ++r) {
      const MseCurve& curve = curves[r];
      for (std::size_t s = 0; s < curve.snr_db.size(); ++s) {
        out << to_string(curve.estimators[e]) << ","
            << to_string(cfg.r0_modes[r]) << "," << fmt_csv(curve.snr_db[s])
            << "," << fmt_csv(to_db(curve.mse[e][s][copy_index - 1])) << "\n";
      }
    }
  }
  if (!out) throw std::runtime_error("failed writing mse_vs_snr.csv");
  out.close();

  write_manifest(dir, opt, "sweep", serialize_sim_config(cfg));
}

void cmd_validate_waveform(const CommandOptions& opt) {
  WaveformFileConfig cfg =
      parse_waveform_config(KeyValueFile::parse_file(opt.config_path));
  if (opt.seed) cfg.seed = *opt.seed;
  const std::filesystem::path dir = prepare_out_dir(opt);

  std::vector<double> moduli(cfg.num_trials);
  std::ofstream out = open_output(dir / "cpe_stats.csv");
  out << "trial,cpe_modulus,cpe_phase\n";
  for (std::size_t t = 0; t < cfg.num_trials; ++t) {
    RandomStream rng = RandomStream::substream(cfg.seed, t);
    const std::vector<double> phi = sample_phase_stream(cfg.waveform, rng);
    const cplx cpe =
        compute_cpe_term(phi, cfg.waveform.residual_fo, cfg.waveform.fft_size);
    moduli[t] = std::abs(cpe);
    out << (t + 1) << "," << fmt_csv(moduli[t]) << ","
        << fmt_csv(std::arg(cpe)) << "\n";
  }

  double mean = 0.0;
  for (double m : moduli) mean += m;
  mean /= static_cast<double>(cfg.num_trials);
  std::vector<double> sorted = moduli;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t p01 =
      std::min(sorted.size() - 1,
               static_cast<std::size_t>(0.01 * static_cast<double>(sorted.size())));
  out << "# summary: mean_modulus=" << fmt_csv(mean)
      << ",p01_modulus=" << fmt_csv(sorted[p01]) << "\n";
  if (!out) throw std::runtime_error("failed writing cpe_stats.csv");
  out.close();

  write_manifest(dir, opt, "validate-waveform",
                 serialize_waveform_config(cfg));
}

}  // namespace nbcest
