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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nbcest/montecarlo.hpp"
#include "nbcest/waveform.hpp"

namespace nbcest {

/// Config parse failure with file/line/key diagnostics.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string file, int line, std::string key, std::string what_arg);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_ = 0;
};

/// Flat `key = value` text with `#` comments. Duplicate keys are an error.
struct KeyValueFile {
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool consumed = false;
  };
  std::string path;  // for diagnostics
  std::map<std::string, Entry> entries;

  static KeyValueFile parse_file(const std::string& path);
  static KeyValueFile parse_text(const std::string& text,
                                 const std::string& path = "<string>");

  bool has(const std::string& key) const;
  /// Typed getters; the fallback value is used when the key is absent.
  std::string get_string(const std::string& key, const std::string& fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;
  std::vector<int> get_int_list(const std::string& key,
                                const std::vector<int>& fallback) const;

  /// Throws ConfigError naming the first key that was never consumed.
  void reject_unknown_keys() const;

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;
};

/// Resolved simulate/sweep configuration. `r0_modes` lists every requested
/// initialization (sweep may cover both); `sim.r0_init` is the first.
struct SimFileConfig {
  SimConfig sim;
  std::vector<R0Init> r0_modes{R0Init::IdealModel};
};

/// Resolved validate-waveform configuration.
struct WaveformFileConfig {
  WaveformConfig waveform;
  std::size_t num_trials = 10000;
  std::uint64_t seed = 1;
};

SimFileConfig parse_sim_config(const KeyValueFile& kv);
WaveformFileConfig parse_waveform_config(const KeyValueFile& kv);

/// Serializations round-trip: parse(serialize(cfg)) == cfg, key for key.
std::string serialize_sim_config(const SimFileConfig& cfg);
std::string serialize_waveform_config(const WaveformFileConfig& cfg);

}  // namespace nbcest
