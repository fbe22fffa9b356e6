// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

namespace nbcest::bessel {

/// Arguments above this overflow the unscaled I0/I1 in 64-bit floats.
/// Callers that need larger arguments must use i1_over_i0, which is
/// evaluated in exponentially-scaled form and never overflows.
inline constexpr double kOverflowThreshold = 700.0;

/// Modified Bessel function of the first kind, order zero.
/// Domain: finite x >= 0, x <= kOverflowThreshold.
double i0(double x);

/// Modified Bessel function of the first kind, order one.
/// Domain: finite x >= 0, x <= kOverflowThreshold.
double i1(double x);

/// The ratio I1(x)/I0(x) in [0, 1), strictly increasing, accurate for any
/// finite x >= 0 (scaled/asymptotic evaluation above the series range).
double i1_over_i0(double x);

}  // namespace nbcest::bessel
