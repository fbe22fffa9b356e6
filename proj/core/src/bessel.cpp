// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "nbcest/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nbcest::bessel {

namespace {

constexpr double kSeriesLimit = 15.0;
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_domain(double x, const char* fn) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error(std::string(fn) +
                            ": argument must be finite and nonnegative");
  }
}

// Ascending series sum((x/2)^{2k}/(k!)^2); all terms positive, converges
// fast for x < kSeriesLimit.
double i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Ascending series sum((x/2)^{2k+1}/(k!(k+1)!)).
double i1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5 * x, sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Large-argument expansion of the exponentially scaled function,
// I_nu(x) ~ e^x/sqrt(2 pi x) * sum_k u_k with
// u_k = u_{k-1} * ((2k-1)^2 - 4 nu^2) / (8 x k).
// The series is summed to its smallest term (optimal truncation); at the
// x = 15 boundary the truncation floor is below 2e-14.
double scaled_asymptotic_sum(double x, int nu) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  double prev_mag = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (odd * odd - mu) / (8.0 * x * k);
    const double mag = std::fabs(term);
    if (mag >= prev_mag) break;  // divergent tail reached
    sum += term;
    if (mag < 1e-18) break;
    prev_mag = mag;
  }
  return sum;
}

}  // namespace

double i0(double x) {
  check_domain(x, "bessel::i0");
  if (x > kOverflowThreshold) {
    throw std::overflow_error(
        "bessel::i0: argument exceeds the overflow threshold; use "
        "i1_over_i0 for large arguments");
  }
  if (x < kSeriesLimit) return i0_series(x);
  return std::exp(x) * scaled_asymptotic_sum(x, 0) / std::sqrt(kTwoPi * x);
}

double i1(double x) {
  check_domain(x, "bessel::i1");
  if (x > kOverflowThreshold) {
    throw std::overflow_error(
        "bessel::i1: argument exceeds the overflow threshold; use "
        "i1_over_i0 for large arguments");
  }
  if (x < kSeriesLimit) return i1_series(x);
  return std::exp(x) * scaled_asymptotic_sum(x, 1) / std::sqrt(kTwoPi * x);
}

double i1_over_i0(double x) {
  check_domain(x, "bessel::i1_over_i0");
  if (x == 0.0) return 0.0;
  if (x < kSeriesLimit) return i1_series(x) / i0_series(x);
  // The e^x / sqrt(2 pi x) prefactors cancel, so the ratio never
  // overflows however large x gets.
  return scaled_asymptotic_sum(x, 1) / scaled_asymptotic_sum(x, 0);
}

}  // namespace nbcest::bessel
