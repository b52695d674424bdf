// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/analytic.hpp"

#include <Eigen/LU>
#include <cmath>
#include <functional>

#include "opfp/laws.hpp"

namespace opfp::analytic {

namespace {

Mat safe_inverse(const Mat& m, const char* what) {
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible())
    throw DomainError(std::string(what) + ": matrix is numerically singular");
  return lu.inverse();
}

// Damped fixed point x = step(x, b + iT) with geometric continuation in the
// lift T. High lifts contract strongly; each stage warm-starts the next.
Mat lifted_fixed_point(
    const std::function<Mat(const Mat&, const Mat&)>& step, const Mat& b,
    const Mat& x0, double t0, const IterationConfig& cfg, const char* what) {
  const auto n = b.rows();
  const Mat id = Mat::Identity(n, n);

  std::vector<double> lifts;
  for (double t = t0; t > 1e-4; t *= 0.5) lifts.push_back(t);
  lifts.push_back(0.0);

  const double theta = cfg.damping;
  Mat x = x0;
  for (std::size_t stage = 0; stage < lifts.size(); ++stage) {
    const Mat bt = b + Complex(0.0, lifts[stage]) * id;
    const bool final_stage = stage + 1 == lifts.size();
    const double tol = final_stage ? cfg.tol : std::max(cfg.tol, 1e-11);
    double res = 0.0;
    bool done = false;
    for (int it = 0; it < cfg.max_iter; ++it) {
      Mat next = step(x, bt);
      res = (next - x).norm();
      x = theta == 1.0 ? std::move(next) : Mat((1 - theta) * x + theta * next);
      if (res <= tol) {
        done = true;
        break;
      }
    }
    if (!done)
      throw ConvergenceError(std::string(what) + ": fixed point stalled", res);
  }
  return x;
}

double auto_lift(const IterationConfig& cfg, double scale) {
  if (cfg.continuation_lift > 0.0) return cfg.continuation_lift;
  return 8.0 * std::max(1.0, scale);
}

}  // namespace

Mat cauchy_bernoulli(const CpMap& eta, const Mat& b) {
  Mat binv = safe_inverse(b, "cauchy_bernoulli");
  return safe_inverse(Mat(b - eta.apply(binv)), "cauchy_bernoulli");
}

Mat f_bernoulli(const Mat& a, const Mat& b) {
  Mat binv = safe_inverse(b, "f_bernoulli");
  return b - a * binv * a;
}

Mat cauchy_semicircle(const CpMap& eta, const Mat& b,
                      const IterationConfig& cfg) {
  if (b.rows() != b.cols()) throw DimensionError("point must be square");
  auto step = [&eta](const Mat& g, const Mat& bt) {
    return safe_inverse(Mat(bt - eta.apply(g)), "cauchy_semicircle");
  };
  const double t0 = auto_lift(cfg, std::sqrt(eta.unit_norm()));
  const auto n = b.rows();
  Mat x0 = safe_inverse(
      Mat(b + Complex(0.0, t0) * Mat::Identity(n, n)), "cauchy_semicircle");
  Mat g = lifted_fixed_point(step, b, x0, t0, cfg, "cauchy_semicircle");
  double res = (g - step(g, b)).norm();
  if (!(res <= 10 * std::max(cfg.tol, 1e-13)))
    throw ConvergenceError("cauchy_semicircle: residual too large", res);
  return g;
}

Mat subordination_omega(const CpMap& eta, int n, const Mat& b,
                        const IterationConfig& cfg) {
  if (n < 2) throw ArgumentError("free power must be at least 2");
  const double inv_n = 1.0 / n;
  auto step = [&eta, inv_n](const Mat& w, const Mat& bt) {
    Mat winv = safe_inverse(w, "subordination_omega");
    return Mat(inv_n * bt + (1.0 - inv_n) * (w - eta.apply(winv)));
  };
  const double t0 = auto_lift(cfg, std::sqrt(eta.unit_norm()));
  Mat x0 = b + Complex(0.0, t0) * Mat::Identity(b.rows(), b.cols());
  return lifted_fixed_point(step, b, x0, t0, cfg, "subordination_omega");
}

Mat f_arcsine(const Mat& a, const Mat& b, const IterationConfig& cfg) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("atom and point sizes differ");
  CpMap eta({a}, 1, 1);
  Mat w = subordination_omega(eta, 2, b, cfg);
  // Each subordination step keeps Im w >= Im b / 2; enforce it on the result.
  if (min_imag_eigenvalue(w) < 0.5 * min_imag_eigenvalue(b) - 1e-8)
    throw ConvergenceError("f_arcsine: iterate left the half-plane", 0.0);
  return 2.0 * w - b;
}

Mat f_arcsine_sqrt(const Mat& a, const Mat& b) {
  Mat ainv = safe_inverse(a, "f_arcsine_sqrt");
  Mat ba = b * ainv;
  const auto n = b.rows();
  Mat arg = ba * ba - 4.0 * Mat::Identity(n, n);
  return principal_sqrt(arg) * a;
}

AbelReport abel_check(const Mat& a, const Mat& b, int n,
                      const IterationConfig& cfg) {
  if (n < 1) throw ArgumentError("iteration count must be positive");
  Mat ainv = safe_inverse(a, "abel_check");
  Mat iter = b;
  for (int k = 0; k < n; ++k) {
    Mat next = f_arcsine(a, iter, cfg);
    if (min_imag_eigenvalue(next) < min_imag_eigenvalue(iter) - 1e-8)
      throw DomainError("abel_check: iterate left the half-plane");
    iter = std::move(next);
  }
  Mat lhs = iter * ainv * iter * ainv;
  Mat rhs = b * ainv * b * ainv -
            4.0 * n * Mat::Identity(b.rows(), b.cols());
  AbelReport rep;
  rep.point = b;
  rep.n = n;
  rep.residual = (lhs - rhs).norm();
  return rep;
}

Mat semigroup_f(const Mat& a, double t, const Mat& b,
                const IterationConfig& cfg) {
  if (t <= 0.0) throw ArgumentError("time parameter must be positive");
  const double rt = std::sqrt(t);
  return rt * f_arcsine(a, Mat(b / rt), cfg);
}

OdeResidual ode_residual(const Mat& a, const Mat& b, double h,
                         const IterationConfig& cfg) {
  if (h <= 0.0) h = 1e-5 * (1.0 + b.norm());
  Mat f = f_arcsine(a, b, cfg);
  Mat binv = safe_inverse(b, "ode_residual");

  auto directional = [&](const Mat& v) {
    double vn = v.norm();
    Mat dir = v / vn;
    auto central = [&](double hh) {
      Mat fp = f_arcsine(a, Mat(b + hh * dir), cfg);
      Mat fm = f_arcsine(a, Mat(b - hh * dir), cfg);
      return Mat((fp - fm) / (2.0 * hh));
    };
    Mat dh = central(h);
    Mat dh2 = central(h / 2.0);
    return Mat(vn * (4.0 * dh2 - dh) / 3.0);
  };

  OdeResidual out;
  out.step = h;
  Mat v1 = b - 2.0 * (a * binv * a);
  Mat v2 = b - 4.0 * (a * binv * a);
  out.bernoulli_variance_reading = (f - directional(v1)).norm();
  out.arcsine_variance_reading = (f - directional(v2)).norm();
  return out;
}

double quadratic_g_check(const Mat& a, const Mat& b,
                         const IterationConfig& cfg) {
  Mat f = f_arcsine(a, b, cfg);
  Mat g = safe_inverse(f, "quadratic_g_check");
  const auto n = b.rows();
  Mat bg = b * g;
  Mat ag = a * g;
  Mat res = bg * bg - Mat::Identity(n, n) - 4.0 * (ag * ag);
  return res.norm();
}

double partial_trace_semicircle_check(const std::vector<Mat>& a_list,
                                      const Mat& b,
                                      const IterationConfig& cfg) {
  if (a_list.empty()) throw ArgumentError("need at least one operator");
  const int m = static_cast<int>(a_list.size());
  CpMap eta_level(std::vector<Mat>{block_diag(a_list)}, 1, 1);
  Mat g_level = cauchy_semicircle(eta_level, diag_lift(b, m), cfg);
  Mat traced = partial_trace(g_level, m);
  CpMap eta_avg(a_list, 1, m);
  Mat g_direct = cauchy_semicircle(eta_avg, b, cfg);
  return (traced - g_direct).norm();
}

TruncatedCauchy cauchy_generic(const Distribution& dist, const Mat& b,
                               int order, double growth) {
  if (growth < 0.0)
    growth = laws::moment_growth_bound(dist, std::min(order, 6), 6);
  Mat c = safe_inverse(b, "cauchy_generic");
  const double q = growth * spectral_norm(c);
  if (q >= 1.0)
    throw DomainError(
        "cauchy_generic: point too close to the spectrum for the series");
  auto table = dist.moment_table(c, order);
  Mat acc = Mat::Zero(b.rows(), b.cols());
  for (const Mat& t : table) acc += t;
  TruncatedCauchy out;
  out.value = c * acc;
  out.tail_bound = std::pow(q, order + 1) / (1.0 - q);
  out.growth = growth;
  out.order = order;
  return out;
}

}  // namespace opfp::analytic
