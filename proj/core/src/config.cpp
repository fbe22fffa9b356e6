// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "nbcest/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nbcest {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

// full-precision doubles that re-parse to the same bits
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(v[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string file, int line, std::string key,
                         std::string what_arg)
    : std::runtime_error(file + ":" + std::to_string(line) + ": field '" +
                         key + "': " + what_arg),
      key_(std::move(key)),
      line_(line) {}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

KeyValueFile KeyValueFile::parse_text(const std::string& text,
                                      const std::string& path) {
  KeyValueFile kv;
  kv.path = path;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path, lineno, trimmed, "expected 'key = value'");
    }
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = trim(trimmed.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path, lineno, "", "empty key");
    }
    if (kv.entries.count(key)) {
      throw ConfigError(path, lineno, key, "duplicate key");
    }
    kv.entries[key] = Entry{value, lineno, false};
  }
  return kv;
}

bool KeyValueFile::has(const std::string& key) const {
  return entries.count(key) != 0;
}

void KeyValueFile::fail(const std::string& key, const std::string& msg) const {
  const auto it = entries.find(key);
  throw ConfigError(path, it == entries.end() ? 0 : it->second.line, key, msg);
}

std::string KeyValueFile::get_string(const std::string& key,
                                     const std::string& fallback) const {
  const auto it = entries.find(key);
  if (it == entries.end()) return fallback;
  it->second.consumed = true;
  return it->second.value;
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  std::string v = get_string(key, "");
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  fail(key, "expected a boolean (true/false/on/off)");
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key, "");
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(key, "expected a finite number, got '" + v + "'");
  }
}

std::uint64_t KeyValueFile::get_u64(const std::string& key,
                                    std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key, "");
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    fail(key, "expected an unsigned integer, got '" + v + "'");
  }
  return out;
}

std::size_t KeyValueFile::get_size(const std::string& key,
                                   std::size_t fallback) const {
  return static_cast<std::size_t>(get_u64(key, fallback));
}

std::vector<double> KeyValueFile::get_double_list(
    const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  const std::string raw = get_string(key, "");
  std::vector<double> out;
  for (const std::string& item : split_commas(raw)) {
    try {
      std::size_t pos = 0;
      const double d = std::stod(item, &pos);
      if (pos != item.size() || !std::isfinite(d))
        throw std::invalid_argument(item);
      out.push_back(d);
    } catch (const std::exception&) {
      fail(key, "expected a comma-separated number list, got '" + raw + "'");
    }
  }
  if (out.empty()) fail(key, "list must not be empty");
  return out;
}

std::vector<int> KeyValueFile::get_int_list(
    const std::string& key, const std::vector<int>& fallback) const {
  if (!has(key)) return fallback;
  const std::string raw = get_string(key, "");
  std::vector<int> out;
  for (const std::string& item : split_commas(raw)) {
    int v = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      fail(key, "expected a comma-separated integer list, got '" + raw + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) fail(key, "list must not be empty");
  return out;
}

void KeyValueFile::reject_unknown_keys() const {
  for (const auto& [key, entry] : entries) {
    if (!entry.consumed) {
      throw ConfigError(path, entry.line, key, "unknown key");
    }
  }
}

SimFileConfig parse_sim_config(const KeyValueFile& kv) {
  SimFileConfig out;
  SimConfig& sim = out.sim;

  sim.snr_db_list = kv.get_double_list("snr_db", sim.snr_db_list);
  sim.k = kv.get_size("k", sim.k);
  sim.num_copies = kv.get_size("num_copies", sim.num_copies);
  sim.num_realizations = kv.get_size("num_realizations", sim.num_realizations);
  sim.seed = kv.get_u64("seed", sim.seed);
  sim.phase_noise = kv.get_bool("phase_noise", sim.phase_noise);

  const std::string chan = kv.get_string("channel", "iid_flat");
  if (chan == "iid_flat") {
    sim.channel = ChannelModelSpec::iid_flat();
  } else if (chan == "fully_correlated") {
    sim.channel = ChannelModelSpec::fully_correlated();
  } else if (chan == "etu") {
    sim.channel = ChannelModelSpec::etu();
  } else {
    kv.fail("channel",
            "expected one of iid_flat, fully_correlated, etu; got '" + chan +
                "'");
  }
  if (sim.channel.variant == ChannelVariant::EtuProfile) {
    sim.channel.subcarrier_spacing_hz = kv.get_double(
        "etu_subcarrier_spacing_hz", sim.channel.subcarrier_spacing_hz);
    // Delays are written in nanoseconds by humans; the serializer uses the
    // seconds key so that resolved configs round-trip bit-exactly.
    if (kv.has("etu_tap_delays_ns") && kv.has("etu_tap_delays_s")) {
      kv.fail("etu_tap_delays_ns",
              "give either etu_tap_delays_ns or etu_tap_delays_s, not both");
    }
    if (kv.has("etu_tap_delays_ns")) {
      const std::vector<double> ns = kv.get_double_list("etu_tap_delays_ns", {});
      sim.channel.tap_delays_s.clear();
      for (double d : ns) sim.channel.tap_delays_s.push_back(d * 1e-9);
    } else {
      sim.channel.tap_delays_s =
          kv.get_double_list("etu_tap_delays_s", sim.channel.tap_delays_s);
    }
    sim.channel.tap_powers_db =
        kv.get_double_list("etu_tap_powers_db", sim.channel.tap_powers_db);
    sim.channel.subcarrier_indices =
        kv.get_int_list("subcarrier_indices", sim.channel.subcarrier_indices);
  }

  const std::string est =
      kv.get_string("estimators", "proposed,traditional,ideal");
  sim.estimators.clear();
  for (const std::string& name : split_commas(est)) {
    if (name == "proposed") {
      sim.estimators.push_back(EstimatorKind::Proposed);
    } else if (name == "traditional") {
      sim.estimators.push_back(EstimatorKind::Traditional);
    } else if (name == "ideal") {
      sim.estimators.push_back(EstimatorKind::Ideal);
    } else {
      kv.fail("estimators",
              "expected a subset of proposed,traditional,ideal; got '" + name +
                  "'");
    }
  }
  if (sim.estimators.empty()) kv.fail("estimators", "list must not be empty");

  const std::string r0 = kv.get_string("r0_init", "ideal_model");
  out.r0_modes.clear();
  for (const std::string& name : split_commas(r0)) {
    if (name == "identity") {
      out.r0_modes.push_back(R0Init::Identity);
    } else if (name == "ideal_model") {
      out.r0_modes.push_back(R0Init::IdealModel);
    } else {
      kv.fail("r0_init",
              "expected identity and/or ideal_model; got '" + name + "'");
    }
  }
  if (out.r0_modes.empty()) kv.fail("r0_init", "list must not be empty");
  sim.r0_init = out.r0_modes.front();

  kv.reject_unknown_keys();
  sim.validate();
  return out;
}

WaveformFileConfig parse_waveform_config(const KeyValueFile& kv) {
  WaveformFileConfig out;
  WaveformConfig& wf = out.waveform;
  wf.fft_size = kv.get_size("fft_size", wf.fft_size);
  wf.active_subcarriers =
      kv.get_int_list("active_subcarriers", wf.active_subcarriers);
  wf.residual_fo = kv.get_double("residual_fo", wf.residual_fo);
  wf.phase_noise_std = kv.get_double("phase_noise_std", wf.phase_noise_std);
  wf.noise_var = kv.get_double("noise_var", wf.noise_var);
  wf.initial_phase = kv.get_double("initial_phase", wf.initial_phase);
  out.num_trials = kv.get_size("num_trials", out.num_trials);
  out.seed = kv.get_u64("seed", out.seed);
  kv.reject_unknown_keys();
  if (out.num_trials == 0) kv.fail("num_trials", "must be >= 1");
  wf.validate();
  return out;
}

std::string serialize_sim_config(const SimFileConfig& cfg) {
  const SimConfig& sim = cfg.sim;
  std::string text;
  text += "snr_db = " + join_doubles(sim.snr_db_list) + "\n";
  text += "k = " + std::to_string(sim.k) + "\n";
  text += "num_copies = " + std::to_string(sim.num_copies) + "\n";
  text += "num_realizations = " + std::to_string(sim.num_realizations) + "\n";
  text += "seed = " + std::to_string(sim.seed) + "\n";
  text += "phase_noise = " + std::string(sim.phase_noise ? "true" : "false") +
          "\n";
  switch (sim.channel.variant) {
    case ChannelVariant::IidFlat:
      text += "channel = iid_flat\n";
      break;
    case ChannelVariant::FullyCorrelated:
      text += "channel = fully_correlated\n";
      break;
    case ChannelVariant::EtuProfile: {
      text += "channel = etu\n";
      text += "etu_subcarrier_spacing_hz = " +
              fmt_double(sim.channel.subcarrier_spacing_hz) + "\n";
      text += "etu_tap_delays_s = " + join_doubles(sim.channel.tap_delays_s) +
              "\n";
      text += "etu_tap_powers_db = " + join_doubles(sim.channel.tap_powers_db) +
              "\n";
      if (!sim.channel.subcarrier_indices.empty()) {
        text += "subcarrier_indices = " +
                join_ints(sim.channel.subcarrier_indices) + "\n";
      }
      break;
    }
  }
  std::string est;
  for (std::size_t i = 0; i < sim.estimators.size(); ++i) {
    if (i) est += ",";
    est += to_string(sim.estimators[i]);
  }
  text += "estimators = " + est + "\n";
  std::string r0;
  for (std::size_t i = 0; i < cfg.r0_modes.size(); ++i) {
    if (i) r0 += ",";
    r0 += to_string(cfg.r0_modes[i]);
  }
  text += "r0_init = " + r0 + "\n";
  return text;
}

std::string serialize_waveform_config(const WaveformFileConfig& cfg) {
  std::string text;
  text += "fft_size = " + std::to_string(cfg.waveform.fft_size) + "\n";
  text += "active_subcarriers = " +
          join_ints(cfg.waveform.active_or_default()) + "\n";
  text += "residual_fo = " + fmt_double(cfg.waveform.residual_fo) + "\n";
  text +=
      "phase_noise_std = " + fmt_double(cfg.waveform.phase_noise_std) + "\n";
  text += "noise_var = " + fmt_double(cfg.waveform.noise_var) + "\n";
  text += "initial_phase = " + fmt_double(cfg.waveform.initial_phase) + "\n";
  text += "num_trials = " + std::to_string(cfg.num_trials) + "\n";
  text += "seed = " + std::to_string(cfg.seed) + "\n";
  return text;
}

}  // namespace nbcest
