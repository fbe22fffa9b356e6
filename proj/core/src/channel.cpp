// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "nbcest/channel.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace nbcest {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<int> indices_or_default(const ChannelModelSpec& spec,
                                    std::size_t k) {
  if (spec.subcarrier_indices.empty()) {
    std::vector<int> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
    return idx;
  }
  if (spec.subcarrier_indices.size() != k) {
    throw std::invalid_argument(
        "build_correlation: subcarrier_indices length must equal K");
  }
  std::set<int> seen(spec.subcarrier_indices.begin(),
                     spec.subcarrier_indices.end());
  if (seen.size() != spec.subcarrier_indices.size()) {
    throw std::invalid_argument(
        "build_correlation: duplicate subcarrier indices");
  }
  return spec.subcarrier_indices;
}

}  // namespace

ChannelModelSpec ChannelModelSpec::iid_flat() {
  return ChannelModelSpec{};
}

ChannelModelSpec ChannelModelSpec::fully_correlated() {
  ChannelModelSpec s;
  s.variant = ChannelVariant::FullyCorrelated;
  return s;
}

ChannelModelSpec ChannelModelSpec::etu() {
  ChannelModelSpec s;
  s.variant = ChannelVariant::EtuProfile;
  s.tap_delays_s = {0e-9,   50e-9,   120e-9,  200e-9, 230e-9,
                    500e-9, 1600e-9, 2300e-9, 5000e-9};
  s.tap_powers_db = {-1.0, -1.0, -1.0, 0.0, 0.0, 0.0, -3.0, -5.0, -7.0};
  s.subcarrier_spacing_hz = 15e3;
  return s;
}

void validate_correlation(const CMat& r, double herm_tol, double psd_tol) {
  if (r.rows() != r.cols() || r.rows() == 0) {
    throw std::invalid_argument("correlation matrix must be square, K >= 1");
  }
  if (!is_hermitian(r, herm_tol)) {
    throw std::invalid_argument("correlation matrix must be Hermitian");
  }
  psd_factor(r, psd_tol);  // throws if indefinite beyond tolerance
}

CMat build_correlation(const ChannelModelSpec& spec, std::size_t k) {
  if (k == 0) {
    throw std::invalid_argument("build_correlation: K must be >= 1");
  }
  switch (spec.variant) {
    case ChannelVariant::IidFlat:
      return CMat::identity(k);
    case ChannelVariant::FullyCorrelated:
      return CMat::ones(k);
    case ChannelVariant::EtuProfile:
      break;
  }

  const std::vector<int> idx = indices_or_default(spec, k);
  const std::size_t taps = spec.tap_delays_s.size();
  if (taps == 0 || spec.tap_powers_db.size() != taps) {
    throw std::invalid_argument(
        "build_correlation: tap delays/powers missing or mismatched");
  }
  for (std::size_t p = 0; p < taps; ++p) {
    if (!(spec.tap_delays_s[p] >= 0.0) ||
        (p > 0 && !(spec.tap_delays_s[p] > spec.tap_delays_s[p - 1]))) {
      throw std::invalid_argument(
          "build_correlation: tap delays must be nonnegative and strictly "
          "increasing");
    }
    if (!std::isfinite(spec.tap_powers_db[p])) {
      throw std::invalid_argument("build_correlation: non-finite tap power");
    }
  }
  if (!(spec.subcarrier_spacing_hz > 0.0)) {
    throw std::invalid_argument(
        "build_correlation: subcarrier spacing must be positive");
  }

  std::vector<double> power(taps);
  double total = 0.0;
  for (std::size_t p = 0; p < taps; ++p) {
    power[p] = std::pow(10.0, spec.tap_powers_db[p] / 10.0);
    total += power[p];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument(
        "build_correlation: tap powers are not normalizable");
  }
  for (double& p : power) p /= total;

  // R[k,l] = sum_p P_p exp(-j 2 pi df (idx_k - idx_l) tau_p); a convex
  // combination of rank-one phase ramps, hence Hermitian PSD with unit
  // diagonal.
  CMat r(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      cplx acc = 0.0;
      const double delta = static_cast<double>(idx[a] - idx[b]);
      for (std::size_t p = 0; p < taps; ++p) {
        const double angle =
            -kTwoPi * spec.subcarrier_spacing_hz * delta * spec.tap_delays_s[p];
        acc += power[p] * std::polar(1.0, angle);
      }
      r(a, b) = acc;
    }
  }
  return hermitized(r);
}

CVec sample_channel_from_factor(const CMat& factor, std::size_t k,
                                RandomStream& rng) {
  // Always consume K draws so the stream layout does not depend on the
  // numerical rank of the correlation matrix.
  CVec z(k);
  for (std::size_t i = 0; i < k; ++i) z[i] = rng.cgaussian(1.0);
  z.resize(factor.cols());
  return matvec(factor, z);
}

CVec sample_channel(const CMat& r, RandomStream& rng) {
  validate_correlation(r);
  return sample_channel_from_factor(psd_factor(r), r.rows(), rng);
}

PhaseSample sample_phase(RandomStream& rng) { return PhaseSample{rng.phase()}; }

RepetitionCopy make_repetition_copy(const CVec& h, PhaseSample phi,
                                    double gamma, std::size_t copy_index,
                                    RandomStream& rng, bool noise_enabled) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument(
        "make_repetition_copy: gamma must be positive and finite");
  }
  const cplx rot = std::polar(1.0, phi.phi);
  RepetitionCopy copy;
  copy.r.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    copy.r[i] = rot * h[i];
    if (noise_enabled) copy.r[i] += rng.cgaussian(gamma);
  }
  copy.true_phase = phi.phi;
  copy.copy_index = copy_index;
  return copy;
}

}  // namespace nbcest
