// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/laws.hpp"

#include <cmath>

#include "opfp/rng.hpp"

namespace opfp {

Mat Distribution::eval_H(const NilpotentPoint& p) const {
  return p.value * eval_M(p);
}

Mat Distribution::matricial_moment(const Mat& b, int order) const {
  if (order < 0) throw ArgumentError("negative moment order");
  if (order == 0) return Mat::Identity(b.rows(), b.cols());
  check_capacity(order);
  const int s = static_cast<int>(b.rows());
  std::vector<Mat> copies(order, b);
  NilpotentPoint e = superdiag_embed(copies);
  e.base_dim = base_dim_;
  e.level = level_of(e.value, base_dim_);
  Mat m = eval_M(e);
  return m.block(0, order * s, s, s);
}

std::vector<Mat> Distribution::moment_table(const Mat& b,
                                            int max_order) const {
  if (max_order < 0) throw ArgumentError("negative moment order");
  check_capacity(max_order);
  const int s = static_cast<int>(b.rows());
  std::vector<Mat> out;
  out.reserve(max_order + 1);
  out.push_back(Mat::Identity(s, s));
  if (max_order == 0) return out;
  std::vector<Mat> copies(max_order, b);
  NilpotentPoint e = superdiag_embed(copies);
  e.base_dim = base_dim_;
  e.level = level_of(e.value, base_dim_);
  Mat m = eval_M(e);
  for (int k = 1; k <= max_order; ++k) out.push_back(m.block(0, k * s, s, s));
  return out;
}

Mat Distribution::multilinear_moment(const std::vector<Mat>& args) const {
  if (args.empty()) return Mat::Identity(base_dim_, base_dim_);
  check_capacity(static_cast<int>(args.size()));
  for (const Mat& a : args)
    if (a.rows() != base_dim_ || a.cols() != base_dim_)
      throw DimensionError("multilinear arguments must have base dimension");
  NilpotentPoint e = superdiag_embed(args);
  Mat m = eval_M(e);
  return corner_block(m, base_dim_);
}

Mat Distribution::sum_of_moments(const NilpotentPoint& p) const {
  check_capacity(p.index - 1);
  Mat out = Mat::Identity(p.value.rows(), p.value.cols());
  for (int k = 1; k < p.index; ++k) out += matricial_moment(p.value, k);
  return out;
}

namespace laws {

namespace {

// Middle-index partial trace for composite levels (outer, model, base):
// averages over the model index u at fixed outer blocks.
Mat mid_partial_trace(const Mat& w, int m, int k, int d) {
  Mat out = Mat::Zero(m * d, m * d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int u = 0; u < k; ++u)
        out.block(i * d, j * d, d, d) +=
            w.block((i * k + u) * d, (j * k + u) * d, d, d);
  return out / static_cast<double>(k);
}

// Lift of b in M_m(B) to M_m(M_k(B)) acting as identity on the model index.
Mat model_lift(const Mat& b, int m, int k, int d) {
  Mat out = Mat::Zero(m * k * d, m * k * d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int u = 0; u < k; ++u)
        out.block((i * k + u) * d, (j * k + u) * d, d, d) =
            b.block(i * d, j * d, d, d);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bernoulli

BernoulliLaw::BernoulliLaw(CpMap eta)
    : Distribution(eta.dim(), kUnlimitedOrder), eta_(std::move(eta)) {}

Mat BernoulliLaw::matricial_moment(const Mat& b, int order) const {
  if (order < 0) throw ArgumentError("negative moment order");
  const int s = static_cast<int>(level_of(b, base_dim_)) * base_dim_;
  if (order == 0) return Mat::Identity(s, s);
  if (order % 2 != 0) return Mat::Zero(s, s);
  Mat a = eta_.apply(b) * b;
  Mat out = a;
  for (int k = 1; k < order / 2; ++k) out = out * a;
  return out;
}

std::vector<Mat> BernoulliLaw::moment_table(const Mat& b,
                                            int max_order) const {
  const int s = static_cast<int>(b.rows());
  std::vector<Mat> out;
  out.reserve(max_order + 1);
  Mat a = eta_.apply(b) * b;
  Mat pow = Mat::Identity(s, s);
  for (int n = 0; n <= max_order; ++n) {
    if (n == 0) {
      out.push_back(Mat::Identity(s, s));
    } else if (n % 2 != 0) {
      out.push_back(Mat::Zero(s, s));
    } else {
      pow = pow * a;
      out.push_back(pow);
    }
  }
  return out;
}

Mat BernoulliLaw::eval_M(const NilpotentPoint& p) const {
  return sum_of_moments(p);
}

// ---------------------------------------------------------------------------
// Semicircle

SemicircleLaw::SemicircleLaw(CpMap eta, int enum_cap, Exec exec)
    : Distribution(eta.dim(), enum_cap), eta_(std::move(eta)), exec_(exec) {}

Mat SemicircleLaw::matricial_moment(const Mat& b, int order) const {
  check_capacity(order);
  return nc_weighted_moment(eta_, b, order, NestWeight::Semicircle, exec_);
}

Mat SemicircleLaw::eval_M(const NilpotentPoint& p) const {
  return sum_of_moments(p);
}

// ---------------------------------------------------------------------------
// Arcsine

ArcsineLaw::ArcsineLaw(CpMap eta)
    : Distribution(eta.dim(), kUnlimitedOrder), eta_(std::move(eta)) {}

Mat ArcsineLaw::matricial_moment(const Mat& b, int order) const {
  if (order < 0) throw ArgumentError("negative moment order");
  if (order % 2 != 0) return Mat::Zero(b.rows(), b.cols());
  return moment_table(b, order).back();
}

std::vector<Mat> ArcsineLaw::moment_table(const Mat& b, int max_order) const {
  if (max_order < 0) throw ArgumentError("negative moment order");
  const int s = static_cast<int>(b.rows());
  // a_n and B_n vanish for odd n; evens follow the division recurrence.
  std::vector<Mat> a(max_order + 1, Mat::Zero(s, s));
  std::vector<Mat> bt(max_order + 1, Mat::Zero(s, s));
  a[0] = Mat::Identity(s, s);
  for (int n = 2; n <= max_order; n += 2) {
    bt[n] = (2.0 / n) * (eta_.apply(b * a[n - 2]) * b);
    Mat acc = Mat::Zero(s, s);
    for (int j = 2; j <= n; j += 2) acc += bt[j] * a[n - j];
    a[n] = acc;
  }
  return a;
}

Mat ArcsineLaw::eval_M(const NilpotentPoint& p) const {
  return sum_of_moments(p);
}

// ---------------------------------------------------------------------------
// Matrix model

MatrixModelLaw::MatrixModelLaw(Mat x, int model_dim, int base_dim)
    : Distribution(base_dim, kUnlimitedOrder), x_(std::move(x)), k_(model_dim) {
  if (x_.rows() != x_.cols() || x_.rows() != k_ * base_dim)
    throw DimensionError("model matrix size must be model_dim * base_dim");
  double dev = (x_ - x_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * std::max(1.0, x_.cwiseAbs().maxCoeff()))
    throw ArgumentError("model matrix must be self-adjoint");
}

Mat MatrixModelLaw::matricial_moment(const Mat& b, int order) const {
  if (order < 0) throw ArgumentError("negative moment order");
  const int m = level_of(b, base_dim_);
  if (order == 0) return Mat::Identity(b.rows(), b.cols());
  Mat w = diag_lift(x_, m) * model_lift(b, m, k_, base_dim_);
  Mat pow = w;
  for (int t = 1; t < order; ++t) pow = pow * w;
  return mid_partial_trace(pow, m, k_, base_dim_);
}

Mat MatrixModelLaw::eval_M(const NilpotentPoint& p) const {
  return sum_of_moments(p);
}

std::optional<CpMap> MatrixModelLaw::variance() const {
  const int d = base_dim_;
  // Kraus form with self-adjoint operators exists when the model is block
  // diagonal: eta(b) = (1/k) sum_u x_u b x_u.
  for (int u = 0; u < k_; ++u)
    for (int v = 0; v < k_; ++v) {
      if (u == v) continue;
      if (x_.block(u * d, v * d, d, d).cwiseAbs().maxCoeff() > 1e-14)
        return std::nullopt;
    }
  std::vector<Mat> kraus;
  kraus.reserve(k_);
  for (int u = 0; u < k_; ++u) kraus.push_back(x_.block(u * d, u * d, d, d));
  return CpMap(std::move(kraus));
}

// ---------------------------------------------------------------------------
// Dilation

DilatedLaw::DilatedLaw(DistPtr base, double lambda)
    : Distribution(base->base_dim(), base->order_cap()),
      base_(std::move(base)),
      lambda_(lambda) {
  if (lambda_ == 0.0) throw ArgumentError("dilation factor must be nonzero");
}

Mat DilatedLaw::eval_M(const NilpotentPoint& p) const {
  NilpotentPoint q = p;
  q.value = lambda_ * p.value;
  return base_->eval_M(q);
}

Mat DilatedLaw::matricial_moment(const Mat& b, int order) const {
  return base_->matricial_moment(Mat(lambda_ * b), order);
}

std::vector<Mat> DilatedLaw::moment_table(const Mat& b, int max_order) const {
  return base_->moment_table(Mat(lambda_ * b), max_order);
}

std::optional<CpMap> DilatedLaw::variance() const {
  auto v = base_->variance();
  if (!v) return std::nullopt;
  return v->scaled(lambda_ * lambda_);
}

DistPtr dilate(DistPtr base, double lambda) {
  return std::make_shared<DilatedLaw>(std::move(base), lambda);
}

DistPtr zero_distribution(int base_dim) {
  return std::make_shared<MatrixModelLaw>(Mat::Zero(base_dim, base_dim), 1,
                                          base_dim);
}

// ---------------------------------------------------------------------------
// Standalone engines

Mat bernoulli_moment(const CpMap& eta, const Mat& b, int order) {
  return BernoulliLaw(eta).matricial_moment(b, order);
}

Mat semicircle_moment(const CpMap& eta, const Mat& b, int order, int enum_cap,
                      Exec exec) {
  if (order > enum_cap)
    throw CapacityError("moment order exceeds the enumeration cap");
  return nc_weighted_moment(eta, b, order, NestWeight::Semicircle, exec);
}

Mat arcsine_moment_enum(const CpMap& eta, const Mat& b, int order,
                        int enum_cap, Exec exec) {
  if (order > enum_cap)
    throw CapacityError("moment order exceeds the enumeration cap");
  return nc_weighted_moment(eta, b, order, NestWeight::Arcsine, exec);
}

Mat arcsine_moment_fast(const CpMap& eta, const Mat& b, int order) {
  return ArcsineLaw(eta).matricial_moment(b, order);
}

Mat matrix_model_moment(const Mat& x, int model_dim, int base_dim,
                        const Mat& b, int order) {
  return MatrixModelLaw(x, model_dim, base_dim).matricial_moment(b, order);
}

double moment_growth_bound(const Distribution& dist, int order_cap,
                           int trials, std::uint64_t seed) {
  Rng rng(seed);
  const int d = dist.base_dim();
  double bound = 0.0;
  for (int n = 1; n <= order_cap; ++n) {
    for (int t = 0; t < trials; ++t) {
      std::vector<Mat> args;
      args.reserve(n);
      for (int i = 0; i < n; ++i) args.push_back(rng.unit_spectral(d));
      double nrm = spectral_norm(dist.multilinear_moment(args));
      if (nrm > 0.0)
        bound = std::max(bound, std::pow(nrm, 1.0 / (n + 1)));
    }
  }
  return bound;
}

}  // namespace laws
}  // namespace opfp
