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
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "support/oracles.hpp"

using nbcest::bessel::i0;
using nbcest::bessel::i1;
using nbcest::bessel::i1_over_i0;

namespace {

double rel_err(double got, long double want) {
  return std::fabs(static_cast<double>((got - want) / want));
}

}  // namespace

TEST_CASE("bessel values at zero") {
  CHECK(i0(0.0) == 1.0);
  CHECK(i1(0.0) == 0.0);
  CHECK(i1_over_i0(0.0) == 0.0);
}

TEST_CASE("bessel frozen pins (series oracle)") {
  // values frozen from the extended-precision series oracle
  CHECK(rel_err(i0(1.0), 1.2660658777520083356L) < 1e-12);
  CHECK(rel_err(i0(10.0), 2815.716628466254472L) < 1e-12);
  CHECK(rel_err(i1(1.0), 0.56515910399248502722L) < 1e-12);
  CHECK(rel_err(i1(10.0), 2670.9883037012546545L) < 1e-12);
  CHECK(rel_err(i1_over_i0(1.0), 0.44638996589653450706L) < 1e-12);
  CHECK(rel_err(i1_over_i0(4.0), 0.86352261102455058275L) < 1e-12);
  // pin frozen from the asymptotic oracle
  CHECK(rel_err(i1_over_i0(1000.0), 0.99949987487480468747L) < 1e-10);
}

TEST_CASE("ratio matches extended-precision series on [0, 50]") {
  for (int i = 1; i < 1000; ++i) {
    const double x = 50.0 * i / 999.0;
    const long double want = oracles::bessel_ratio_series(x);
    CHECK(rel_err(i1_over_i0(x), want) < 1e-10);
  }
}

TEST_CASE("ratio matches asymptotic oracle on [100, 1e6]") {
  for (int i = 0; i < 200; ++i) {
    const double x = std::pow(10.0, 2.0 + 4.0 * i / 199.0);
    const long double want = oracles::bessel_ratio_asymptotic(x);
    CHECK(rel_err(i1_over_i0(x), want) < 1e-8);
  }
}

TEST_CASE("i0/i1 match the series oracle across the branch seam") {
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.5 + i * (40.0 - 0.5) / 400.0;
    CHECK(rel_err(i0(x), oracles::bessel_i0_series(x)) < 1e-12);
    CHECK(rel_err(i1(x), oracles::bessel_i1_series(x)) < 1e-12);
  }
}

TEST_CASE("ratio is strictly increasing and bounded in [0, 1)") {
  double prev = i1_over_i0(0.0);
  for (int i = 1; i < 1000; ++i) {
    const double x = 50.0 * i / 999.0;
    const double r = i1_over_i0(x);
    CHECK(r > prev);
    CHECK(r >= 0.0);
    CHECK(r < 1.0);
    prev = r;
  }
  // across the series/asymptotic seam at a fine step
  prev = i1_over_i0(14.5);
  for (int i = 1; i <= 1000; ++i) {
    const double x = 14.5 + i * 1e-3;
    const double r = i1_over_i0(x);
    CHECK(r > prev);
    prev = r;
  }
  // far tail still below 1 and increasing
  CHECK(i1_over_i0(1e8) < 1.0);
  CHECK(i1_over_i0(1e8) > i1_over_i0(1e6));
  CHECK(rel_err(i1_over_i0(1e8), oracles::bessel_ratio_asymptotic(1e8L)) <
        1e-12);
}

TEST_CASE("ratio series dominance bound on (0, 2]") {
  for (int i = 1; i <= 500; ++i) {
    const double x = 2.0 * i / 500.0;
    CHECK(i1_over_i0(x) < 0.5 * x);
  }
}

TEST_CASE("ratio * i0 is consistent with i1") {
  for (int i = 1; i < 1000; ++i) {
    const double x = 50.0 * i / 999.0;
    const double lhs = std::fabs(i1_over_i0(x) * i0(x) - i1(x));
    CHECK(lhs / i1(std::max(x, 1e-6)) < 1e-9);
  }
}

TEST_CASE("ratio asymptote 1 - 1/(2x)") {
  // upper end capped where 1/x^2 is still above one ulp of 1.0
  for (int i = 0; i < 100; ++i) {
    const double x = std::pow(10.0, 2.01 + 4.99 * i / 99.0);
    CHECK(std::fabs(i1_over_i0(x) - (1.0 - 0.5 / x)) < 1.0 / (x * x));
  }
}

TEST_CASE("bessel domain and overflow errors") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(i0(-1.0), std::domain_error);
  CHECK_THROWS_AS(i1(-0.5), std::domain_error);
  CHECK_THROWS_AS(i1_over_i0(-2.0), std::domain_error);
  CHECK_THROWS_AS(i0(nan), std::domain_error);
  CHECK_THROWS_AS(i1(inf), std::domain_error);
  CHECK_THROWS_AS(i1_over_i0(nan), std::domain_error);
  CHECK_THROWS_AS(i0(701.0), std::overflow_error);
  CHECK_THROWS_AS(i1(701.0), std::overflow_error);
  CHECK_NOTHROW(i1_over_i0(701.0));
  CHECK_NOTHROW(i1_over_i0(1e12));
}

TEST_CASE("i0 >= 1 and 0 <= i1 < i0") {
  for (int i = 0; i <= 100; ++i) {
    const double x = 7.0 * i / 100.0;
    CHECK(i0(x) >= 1.0);
    CHECK(i1(x) >= 0.0);
    CHECK(i1(x) < i0(x));
  }
}
