// SPDX-License-Identifier: Apache-2.0
//
// nbcest: sequential MMSE channel estimation for repetition-coded NB-IoT
// Copyright (C) 2026 The nbcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "nbcest/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "nbcest/bessel.hpp"

namespace nbcest {

namespace {

void require_matching_k(const EstimatorState& s, const RepetitionCopy& r) {
  if (s.h_hat.size() != r.r.size() || s.corr.rows() != r.r.size()) {
    throw std::invalid_argument("estimator: K mismatch between state and copy");
  }
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("estimator: gamma must be positive and finite");
  }
}

// I + R/gamma, the system applied everywhere Rt is needed.
CholeskyHpd shrinkage_system(const CMat& corr, double gamma) {
  return CholeskyHpd(
      hermitized(add(CMat::identity(corr.rows()), scaled(corr, 1.0 / gamma))));
}

UpdateDiagnostics diagnostics_from_inner(cplx inner, double gamma,
                                         ZetaRule rule, bool first_copy) {
  UpdateDiagnostics d;
  d.inner_product = inner;
  const double mag = std::abs(inner);
  d.phase_estimate = mag > 0.0 ? std::arg(inner) : 0.0;
  if (first_copy || rule == ZetaRule::Unit) {
    d.zeta = 1.0;
    d.bessel_ratio = 1.0;
    return d;
  }
  if (rule == ZetaRule::Traditional) {
    d.zeta = mag > 0.0 ? inner / mag : cplx{1.0, 0.0};
    d.bessel_ratio = 1.0;
    return d;
  }
  // Proposed: unit phasor scaled by I1/I0 of the confidence argument.
  // A vanishing inner product carries no phase information and the
  // Bessel ratio is 0 there, so zeta = 0.
  if (mag > 0.0) {
    d.bessel_ratio = bessel::i1_over_i0(2.0 * mag / gamma);
    d.zeta = d.bessel_ratio * (inner / mag);
  } else {
    d.bessel_ratio = 0.0;
    d.zeta = 0.0;
  }
  return d;
}

}  // namespace

EstimatorState init_state(const CMat& r0, double gamma) {
  require_gamma(gamma);
  validate_correlation(r0);
  EstimatorState s;
  s.h_hat.assign(r0.rows(), cplx{0.0, 0.0});
  s.corr = r0;
  s.gamma = gamma;
  s.copies_processed = 0;
  return s;
}

UpdateDiagnostics compute_zeta(const RepetitionCopy& r,
                               const EstimatorState& state) {
  require_matching_k(state, r);
  require_gamma(state.gamma);
  const CholeskyHpd chol = shrinkage_system(state.corr, state.gamma);
  const cplx inner = dot_conj(r.r, chol.solve(state.h_hat));
  return diagnostics_from_inner(inner, state.gamma, ZetaRule::Proposed,
                                /*first_copy=*/false);
}

std::pair<EstimatorState, UpdateDiagnostics> update(const EstimatorState& s,
                                                    const RepetitionCopy& r,
                                                    ZetaRule rule) {
  require_matching_k(s, r);
  require_gamma(s.gamma);
  const CholeskyHpd chol = shrinkage_system(s.corr, s.gamma);
  const cplx inner = dot_conj(r.r, chol.solve(s.h_hat));
  const UpdateDiagnostics diag = diagnostics_from_inner(
      inner, s.gamma, rule, s.copies_processed == 0);

  // h' = Rt (h + (zeta/gamma) R r); R' = R (I + R/gamma)^{-1}. R and Rt
  // commute, so the one factorization serves both solves.
  CVec w = matvec(s.corr, r.r);
  const cplx scale = diag.zeta / s.gamma;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = s.h_hat[i] + scale * w[i];

  EstimatorState next;
  next.h_hat = chol.solve(w);
  next.corr = hermitized(chol.solve(s.corr));
  next.gamma = s.gamma;
  next.copies_processed = s.copies_processed + 1;
  return {std::move(next), diag};
}

std::pair<EstimatorState, UpdateDiagnostics> update_proposed(
    const EstimatorState& s, const RepetitionCopy& r) {
  return update(s, r, ZetaRule::Proposed);
}

std::pair<EstimatorState, UpdateDiagnostics> update_traditional(
    const EstimatorState& s, const RepetitionCopy& r) {
  return update(s, r, ZetaRule::Traditional);
}

EstimatorState update_ideal(const EstimatorState& s, const RepetitionCopy& r) {
  return update(s, r, ZetaRule::Unit).first;
}

CMat update_correlation(const CMat& r, double gamma) {
  require_gamma(gamma);
  validate_correlation(r);
  const CholeskyHpd chol = shrinkage_system(r, gamma);
  return hermitized(chol.solve(r));
}

double estimate_phase(const CVec& h_hat, const RepetitionCopy& r) {
  if (squared_norm(h_hat) == 0.0) {
    throw std::invalid_argument("estimate_phase: estimate must be nonzero");
  }
  const cplx inner = dot_conj(h_hat, r.r);
  if (inner == cplx{0.0, 0.0}) {
    throw std::domain_error("estimate_phase: phase undefined, h_hat^dagger r = 0");
  }
  return std::arg(inner);
}

ScalarEstimate scalar_update_fully_correlated(const ScalarEstimate& s,
                                              double gamma,
                                              const RepetitionCopy& r) {
  require_gamma(gamma);
  if (r.r.empty()) {
    throw std::invalid_argument("scalar update: empty observation");
  }
  if (!(s.variance >= 0.0) || !std::isfinite(s.variance)) {
    throw std::invalid_argument("scalar update: invalid variance");
  }
  const double k = static_cast<double>(r.r.size());
  cplx rbar = 0.0;
  for (const cplx& v : r.r) rbar += v;
  rbar /= k;

  const double a = gamma + s.variance * k;
  cplx zeta;
  if (r.copy_index == 0) {
    zeta = 1.0;
  } else {
    const cplx cross = std::conj(rbar) * s.h_hat;
    const double mag = std::abs(cross);
    zeta = mag > 0.0
               ? bessel::i1_over_i0(2.0 * k * mag / a) * (cross / mag)
               : cplx{0.0, 0.0};
  }
  ScalarEstimate next;
  next.h_hat = (gamma * s.h_hat + zeta * k * s.variance * rbar) / a;
  next.variance = s.variance / (1.0 + k * s.variance / gamma);
  return next;
}

}  // namespace nbcest
