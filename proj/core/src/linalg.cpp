// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "nbcest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nbcest {

namespace {

void require_square(const CMat& a, const char* fn) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(fn) + ": matrix must be square");
  }
}

void require_same_size(std::size_t a, std::size_t b, const char* fn) {
  if (a != b) {
    throw std::invalid_argument(std::string(fn) + ": dimension mismatch");
  }
}

}  // namespace

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::ones(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = 1.0;
  return m;
}

CVec matvec(const CMat& a, const CVec& x) {
  require_same_size(a.cols(), x.size(), "matvec");
  CVec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

CMat matmul(const CMat& a, const CMat& b) {
  require_same_size(a.cols(), b.rows(), "matmul");
  CMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

CMat scaled(const CMat& a, cplx s) {
  CMat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

CMat add(const CMat& a, const CMat& b) {
  require_same_size(a.rows(), b.rows(), "add");
  require_same_size(a.cols(), b.cols(), "add");
  CMat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

cplx dot_conj(const CVec& a, const CVec& b) {
  require_same_size(a.size(), b.size(), "dot_conj");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double squared_norm(const CVec& a) {
  double acc = 0.0;
  for (const cplx& v : a) acc += std::norm(v);
  return acc;
}

CMat adjoint(const CMat& a) {
  CMat c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

CMat hermitized(const CMat& a) {
  require_square(a, "hermitized");
  CMat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    c(i, i) = cplx{a(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      c(i, j) = v;
      c(j, i) = std::conj(v);
    }
  }
  return c;
}

bool is_hermitian(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    }
  }
  return true;
}

double trace_real(const CMat& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    t += a(i, i).real();
  return t;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  require_same_size(a.rows(), b.rows(), "max_abs_diff");
  require_same_size(a.cols(), b.cols(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

double max_abs_diff(const CVec& a, const CVec& b) {
  require_same_size(a.size(), b.size(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CholeskyHpd::CholeskyHpd(const CMat& a) {
  require_square(a, "CholeskyHpd");
  const std::size_t n = a.rows();
  l_ = CMat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l_(j, k));
    if (!(d > 0.0)) {
      throw std::runtime_error("CholeskyHpd: matrix is not positive definite");
    }
    const double dj = std::sqrt(d);
    l_(j, j) = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k)
        s -= l_(i, k) * std::conj(l_(j, k));
      l_(i, j) = s / dj;
    }
  }
}

CVec CholeskyHpd::solve(const CVec& b) const {
  const std::size_t n = l_.rows();
  require_same_size(b.size(), n, "CholeskyHpd::solve");
  CVec y(n);
  // L y = b
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * y[k];
    y[i] = s / l_(i, i);
  }
  // L^dagger x = y
  for (std::size_t ii = n; ii-- > 0;) {
    cplx s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l_(k, ii)) * y[k];
    y[ii] = s / l_(ii, ii);
  }
  return y;
}

CMat CholeskyHpd::solve(const CMat& b) const {
  require_same_size(b.rows(), l_.rows(), "CholeskyHpd::solve");
  CMat x(b.rows(), b.cols());
  CVec col(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    const CVec sol = solve(col);
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
  }
  return x;
}

CMat psd_factor(const CMat& a, double tol) {
  require_square(a, "psd_factor");
  const std::size_t n = a.rows();
  CMat work = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::fabs(work(i, i).real()));
  const double cutoff = std::max(scale, 1.0) * 1e-14;
  const double neg_limit = -std::max(scale, 1.0) * tol;

  // Left-looking pivoted Cholesky; factor columns are built in pivot
  // order while rows keep their original indices.
  CMat l(n, n);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n; ++j) {
    // largest remaining diagonal
    std::size_t p = j;
    double best = work(perm[j], perm[j]).real();
    for (std::size_t i = j + 1; i < n; ++i) {
      const double d = work(perm[i], perm[i]).real();
      if (d > best) {
        best = d;
        p = i;
      }
    }
    std::swap(perm[j], perm[p]);
    if (best < neg_limit) {
      throw std::runtime_error("psd_factor: matrix is indefinite");
    }
    if (best <= cutoff) break;  // remaining block is numerically zero
    const double dj = std::sqrt(best);
    l(perm[j], rank) = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = work(perm[i], perm[j]);
      for (std::size_t k = 0; k < rank; ++k)
        s -= l(perm[i], k) * std::conj(l(perm[j], k));
      l(perm[i], rank) = s / dj;
    }
    for (std::size_t i = j + 1; i < n; ++i) {
      work(perm[i], perm[i]) -= std::norm(l(perm[i], rank));
    }
    ++rank;
  }

  CMat f(n, rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < rank; ++k) f(i, k) = l(i, k);
  return f;
}

}  // namespace nbcest
