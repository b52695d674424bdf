// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <vector>

#include "opfp/cp_map.hpp"
#include "opfp/distribution.hpp"

namespace opfp::analytic {

struct IterationConfig {
  double tol = 1e-12;
  int max_iter = 10000;
  double damping = 1.0;  // step mixing in (0, 1]
  // Starting height of the imaginary continuation; negative means automatic
  // (eight times the operator scale of the variance).
  double continuation_lift = -1.0;
};

// Closed form G(b) = (b - eta(b^{-1}))^{-1} of the Boolean central limit.
Mat cauchy_bernoulli(const CpMap& eta, const Mat& b);

// Reciprocal Cauchy transform of the two-point law at +-a,
// F(b) = b - a b^{-1} a.
Mat f_bernoulli(const Mat& a, const Mat& b);

// Semicircular Cauchy transform: solves G = (b - eta(G))^{-1} by a damped
// fixed point with continuation from high in the half-plane.
Mat cauchy_semicircle(const CpMap& eta, const Mat& b,
                      const IterationConfig& cfg = {});

// F of the free self-convolution Ber(+-a) boxplus Ber(+-a), computed from
// the half-point subordination iteration w = b/2 + F_Ber(w)/2, F = 2w - b.
// This is the arcsine F of variance 2 a.a.
Mat f_arcsine(const Mat& a, const Mat& b, const IterationConfig& cfg = {});

// Square-root route for the same map: principal_sqrt((b a^{-1})^2 - 4) a.
// Throws BranchError when the spectrum touches the cut; used as a
// cross-check where it applies.
Mat f_arcsine_sqrt(const Mat& a, const Mat& b);

// Subordination function of the n-fold free power of Ber(eta):
// w = b/n + (1 - 1/n) F_Ber(w).
Mat subordination_omega(const CpMap& eta, int n, const Mat& b,
                        const IterationConfig& cfg = {});

struct AbelReport {
  Mat point;
  int n = 1;
  double residual = 0.0;
};

// Residual of F^{on}(b) a^{-1} F^{on}(b) a^{-1} = b a^{-1} b a^{-1} - 4n,
// with F^{on} computed by repeated f_arcsine.
AbelReport abel_check(const Mat& a, const Mat& b, int n,
                      const IterationConfig& cfg = {});

// F(t, b) = sqrt(t) F_a(b / sqrt(t)); the flow with F(1, .) = F_a.
Mat semigroup_f(const Mat& a, double t, const Mat& b,
                const IterationConfig& cfg = {});

// Residual of F(b) = F'(b)(b - 2 eta(b^{-1})) for the two readings of eta:
// the two-point variance a.a and the arcsine variance 2 a.a. The derivative
// is a Richardson-extrapolated central difference in the stated direction.
// Reported, never asserted.
struct OdeResidual {
  double bernoulli_variance_reading = 0.0;
  double arcsine_variance_reading = 0.0;
  double step = 0.0;
};
OdeResidual ode_residual(const Mat& a, const Mat& b, double h = -1.0,
                         const IterationConfig& cfg = {});

// Residual of (b G)^2 = 1 + 4 (a G)^2 with G = f_arcsine(a, b)^{-1}.
double quadratic_g_check(const Mat& a, const Mat& b,
                         const IterationConfig& cfg = {});

// Traced level-m semicircular resolvent with variance diag(a) . diag(a)
// against the direct resolvent with the averaged variance
// (1/m) sum_j a_j . a_j; returns the norm of the difference.
double partial_trace_semicircle_check(const std::vector<Mat>& a_list,
                                      const Mat& b,
                                      const IterationConfig& cfg = {});

// Truncated resolvent series G = sum_{n<=N} b^{-1} mu~((X b^{-1})^n) with a
// geometric tail bound. Requires growth * ||b^{-1}|| < 1; growth < 0 samples
// the exponential growth bound of the distribution first.
struct TruncatedCauchy {
  Mat value;
  double tail_bound = 0.0;
  double growth = 0.0;
  int order = 0;
};
TruncatedCauchy cauchy_generic(const Distribution& dist, const Mat& b,
                               int order, double growth = -1.0);

}  // namespace opfp::analytic
