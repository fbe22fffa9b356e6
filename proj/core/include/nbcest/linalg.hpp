// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nbcest {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Dense complex matrix, row-major. Sized for the small Hermitian systems
/// of this library (K <= 64 reference observations).
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMat identity(std::size_t n);
  static CMat ones(std::size_t n);
  static CMat zero(std::size_t n) { return CMat(n, n); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const CMat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVec data_;
};

CVec matvec(const CMat& a, const CVec& x);
CMat matmul(const CMat& a, const CMat& b);
CMat scaled(const CMat& a, cplx s);
CMat add(const CMat& a, const CMat& b);

/// a^dagger b (conjugates the first argument).
cplx dot_conj(const CVec& a, const CVec& b);
double squared_norm(const CVec& a);

CMat adjoint(const CMat& a);
/// (A + A^dagger)/2, cleans up round-off asymmetry.
CMat hermitized(const CMat& a);
bool is_hermitian(const CMat& a, double tol);
double trace_real(const CMat& a);
double max_abs_diff(const CMat& a, const CMat& b);
double max_abs_diff(const CVec& a, const CVec& b);

/// Cholesky factorization A = L L^dagger of a Hermitian positive definite
/// matrix. Throws std::runtime_error if a pivot is not strictly positive.
class CholeskyHpd {
 public:
  explicit CholeskyHpd(const CMat& a);
  CVec solve(const CVec& b) const;
  CMat solve(const CMat& b) const;
  const CMat& factor() const { return l_; }

 private:
  CMat l_;
};

/// Diagonally pivoted Cholesky factor of a Hermitian PSD matrix: returns F
/// (n x r, r = numerical rank) with F F^dagger = A. Throws
/// std::runtime_error if A is indefinite beyond tolerance.
CMat psd_factor(const CMat& a, double tol = 1e-10);

}  // namespace nbcest
