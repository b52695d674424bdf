// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/series.hpp"

#include <cmath>
#include <utility>

namespace opfp::series {

namespace {

constexpr double kSeriesResidualTol = 1e-10;

double rel_residual(const Mat& diff, const Mat& ref) {
  return diff.norm() / (1.0 + ref.norm());
}

NilpotentPoint rewrap(Mat value, const NilpotentPoint& like) {
  return NilpotentPoint::from_strict_upper(std::move(value), like.base_dim);
}

void check_defining_residual(double res, const char* what) {
  if (!(res < kSeriesResidualTol))
    throw ConvergenceError(std::string(what) +
                               ": defining equation residual too large",
                           res);
}

}  // namespace

Mat unipotent_inverse(const Mat& m, int index) {
  const auto n = m.rows();
  Mat k = m - Mat::Identity(n, n);
  Mat out = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int j = 1; j < index; ++j) {
    term = Mat(-term * k);
    if (term.cwiseAbs().maxCoeff() == 0.0) break;
    out += term;
  }
  return out;
}

Mat eval_M(const Distribution& d, const NilpotentPoint& p) {
  return d.eval_M(p);
}

Mat eval_H(const Distribution& d, const NilpotentPoint& p) {
  return d.eval_H(p);
}

Mat eval_B(const Distribution& d, const NilpotentPoint& p) {
  Mat m = d.eval_M(p);
  const auto n = m.rows();
  return (m - Mat::Identity(n, n)) * unipotent_inverse(m, p.index);
}

Mat eval_R(const Distribution& d, const NilpotentPoint& c) {
  Mat b = c.value;
  Mat m;
  for (int step = 0; step <= c.index; ++step) {
    m = d.eval_M(rewrap(b, c));
    b = c.value * unipotent_inverse(m, c.index);
  }
  m = d.eval_M(rewrap(b, c));
  check_defining_residual(rel_residual(b * m - c.value, c.value),
                          "R-transform inversion");
  return m - Mat::Identity(m.rows(), m.cols());
}

// ---------------------------------------------------------------------------
// Convolution distributions

namespace {

class ConvBase : public Distribution {
 protected:
  ConvBase(DistPtr mu, DistPtr nu, int order_cap, int factor_margin)
      : Distribution(mu->base_dim(), order_cap),
        mu_(std::move(mu)),
        nu_(std::move(nu)) {
    if (nu_ && nu_->base_dim() != base_dim_)
      throw DimensionError("convolution factors live over different bases");
    if (mu_->order_cap() < order_cap + factor_margin ||
        (nu_ && nu_->order_cap() < order_cap + factor_margin))
      throw CapacityError("factor order caps do not cover the result cap");
  }

  DistPtr mu_, nu_;
};

// M = 1 + t_mu R_mu(p M) + t_nu R_nu(p M), solved by a coupled pass that
// fixes one homogeneous order per sweep: with h = p M, each factor keeps the
// functional inverse b with b M(b) = h, and M is reassembled from the
// factors' series. Exact after index+1 sweeps.
class FreeConv : public ConvBase {
 public:
  FreeConv(DistPtr mu, DistPtr nu, double t_mu, double t_nu, int order_cap)
      : ConvBase(std::move(mu), std::move(nu), order_cap, 0),
        t_mu_(t_mu),
        t_nu_(t_nu) {}

  Mat eval_M(const NilpotentPoint& p) const override {
    check_capacity(p.index - 1);
    const auto n = p.value.rows();
    const Mat id = Mat::Identity(n, n);
    const bool two = nu_ != nullptr;
    Mat b1 = p.value;
    Mat b2 = p.value;
    Mat m, m1, m2, h;
    // One extra sweep beyond the nilpotency index, then a residual check of
    // the assembled system b_i M_i(b_i) = p M.
    for (int sweep = 0; sweep <= p.index + 1; ++sweep) {
      m1 = mu_->eval_M(rewrap(b1, p));
      m2 = two ? nu_->eval_M(rewrap(b2, p)) : id;
      m = id + t_mu_ * (m1 - id) + t_nu_ * (m2 - id);
      h = p.value * m;
      if (sweep == p.index + 1) break;
      b1 = h * unipotent_inverse(m1, p.index);
      if (two) b2 = h * unipotent_inverse(m2, p.index);
    }
    double res = rel_residual(b1 * m1 - h, h);
    if (two) res = std::max(res, rel_residual(b2 * m2 - h, h));
    check_defining_residual(res, "free convolution");
    return m;
  }

 private:
  double t_mu_, t_nu_;
};

// M = (1 - t_mu B_mu(p) - t_nu B_nu(p))^{-1}, a closed expression.
class BooleanConv : public ConvBase {
 public:
  BooleanConv(DistPtr mu, DistPtr nu, double t_mu, double t_nu, int order_cap)
      : ConvBase(std::move(mu), std::move(nu), order_cap, 0),
        t_mu_(t_mu),
        t_nu_(t_nu) {}

  Mat eval_M(const NilpotentPoint& p) const override {
    check_capacity(p.index - 1);
    const auto n = p.value.rows();
    Mat acc = Mat::Identity(n, n) - t_mu_ * eval_B(*mu_, p);
    if (nu_) acc -= t_nu_ * eval_B(*nu_, p);
    return unipotent_inverse(acc, p.index);
  }

 private:
  double t_mu_, t_nu_;
};

// Common machinery for distributions defined by their H-transform. Moments
// are read from prefix embeddings superdiag(1, b, ..., b): the block
// (1, k+2) of H there is the order-k moment, because the unit slot absorbs
// the argument-free factor of H. M at a general nilpotent point comes from
// the bordered point [[0, 1], [0, p]], whose upper-right H block is M(p).
class MonotoneBase : public ConvBase {
 public:
  using ConvBase::ConvBase;

  Mat eval_M(const NilpotentPoint& p) const override {
    check_capacity(p.index - 1);
    const auto n = p.value.rows();
    Mat bordered = Mat::Zero(2 * n, 2 * n);
    bordered.block(0, n, n, n) = Mat::Identity(n, n);
    bordered.block(n, n, n, n) = p.value;
    Mat h = eval_H(NilpotentPoint::from_strict_upper(bordered, p.base_dim));
    return h.block(0, n, n, n);
  }

  Mat matricial_moment(const Mat& b, int order) const override {
    return moment_table(b, order).back();
  }

  std::vector<Mat> moment_table(const Mat& b, int max_order) const override {
    if (max_order < 0) throw ArgumentError("negative moment order");
    check_capacity(max_order);
    const int s = static_cast<int>(b.rows());
    std::vector<Mat> blocks;
    blocks.reserve(max_order + 1);
    blocks.push_back(Mat::Identity(s, s));
    for (int i = 0; i < max_order; ++i) blocks.push_back(b);
    NilpotentPoint e = superdiag_embed(blocks);
    e.base_dim = base_dim_;
    e.level = level_of(e.value, base_dim_);
    Mat h = eval_H(e);
    std::vector<Mat> out;
    out.reserve(max_order + 1);
    for (int k = 0; k <= max_order; ++k)
      out.push_back(h.block(0, (k + 1) * s, s, s));
    return out;
  }
};

class MonotoneConv : public MonotoneBase {
 public:
  MonotoneConv(DistPtr mu, DistPtr nu, int order_cap)
      : MonotoneBase(std::move(mu), std::move(nu), order_cap, 1) {}

  Mat eval_H(const NilpotentPoint& p) const override {
    Mat inner = nu_->eval_H(p);
    return mu_->eval_H(rewrap(std::move(inner), p));
  }
};

// n-fold self-composition of H, for central-limit sums.
class MonotonePower : public MonotoneBase {
 public:
  MonotonePower(DistPtr mu, int n, int order_cap)
      : MonotoneBase(std::move(mu), nullptr, order_cap, 1), n_(n) {
    if (n < 1) throw ArgumentError("composition power must be positive");
  }

  Mat eval_H(const NilpotentPoint& p) const override {
    Mat h = p.value;
    for (int i = 0; i < n_; ++i) h = mu_->eval_H(rewrap(std::move(h), p));
    return h;
  }

 private:
  int n_;
};

}  // namespace

DistPtr free_convolve(DistPtr mu, DistPtr nu, int order_cap) {
  return std::make_shared<FreeConv>(std::move(mu), std::move(nu), 1.0, 1.0,
                                    order_cap);
}

DistPtr boolean_convolve(DistPtr mu, DistPtr nu, int order_cap) {
  return std::make_shared<BooleanConv>(std::move(mu), std::move(nu), 1.0, 1.0,
                                       order_cap);
}

DistPtr monotone_convolve(DistPtr mu, DistPtr nu, int order_cap) {
  return std::make_shared<MonotoneConv>(std::move(mu), std::move(nu),
                                        order_cap);
}

DistPtr boolean_power(DistPtr mu, double t, int order_cap) {
  if (t <= 0.0) throw ArgumentError("Boolean power must be positive");
  return std::make_shared<BooleanConv>(std::move(mu), nullptr, t, 0.0,
                                       order_cap);
}

DistPtr free_power(DistPtr mu, double t, int order_cap) {
  if (t <= 0.0) throw ArgumentError("free power must be positive");
  return std::make_shared<FreeConv>(std::move(mu), nullptr, t, 0.0, order_cap);
}

DistPtr monotone_power(DistPtr mu, int n, int order_cap) {
  return std::make_shared<MonotonePower>(std::move(mu), n, order_cap);
}

}  // namespace opfp::series
