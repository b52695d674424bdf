// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <limits>

#include "opfp/distribution.hpp"
#include "opfp/nc_kernels.hpp"

namespace opfp::laws {

inline constexpr int kUnlimitedOrder = std::numeric_limits<int>::max() / 2;
inline constexpr int kDefaultEnumCap = 16;

// Boolean central limit law: M(b) = (1 - eta(b) b)^{-1}, so the order-2k
// moment is (eta(b) b)^k and odd moments vanish.
class BernoulliLaw : public Distribution {
 public:
  explicit BernoulliLaw(CpMap eta);
  Mat eval_M(const NilpotentPoint& p) const override;
  Mat matricial_moment(const Mat& b, int order) const override;
  std::vector<Mat> moment_table(const Mat& b, int max_order) const override;
  std::optional<CpMap> variance() const override { return eta_; }
  const CpMap& eta() const { return eta_; }

 private:
  CpMap eta_;
};

// Free central limit law; moments are non-crossing pair partition sums with
// the unweighted enclosure rule.
class SemicircleLaw : public Distribution {
 public:
  SemicircleLaw(CpMap eta, int enum_cap = kDefaultEnumCap,
                Exec exec = Exec::Auto);
  Mat eval_M(const NilpotentPoint& p) const override;
  Mat matricial_moment(const Mat& b, int order) const override;
  std::optional<CpMap> variance() const override { return eta_; }
  const CpMap& eta() const { return eta_; }

 private:
  CpMap eta_;
  Exec exec_;
};

// Monotone central limit law. Moments come from the B-transform recurrence
//   B_{2k}(b) = (1/k) eta(b a_{2k-2}(b)) b,   a_n = sum_j B_{2j} a_{n-2j},
// which needs O(n^2) matrix products and no partition enumeration. The
// partition engine with the 1/(blocks+1) nesting weight is kept as an
// independent route (arcsine_moment_enum below).
class ArcsineLaw : public Distribution {
 public:
  explicit ArcsineLaw(CpMap eta);
  Mat eval_M(const NilpotentPoint& p) const override;
  Mat matricial_moment(const Mat& b, int order) const override;
  std::vector<Mat> moment_table(const Mat& b, int max_order) const override;
  std::optional<CpMap> variance() const override { return eta_; }
  const CpMap& eta() const { return eta_; }

 private:
  CpMap eta_;
};

// Distribution of a self-adjoint X in M_k(B) under the normalized partial
// trace id_B (x) tr_k; every moment is an exact matrix product.
class MatrixModelLaw : public Distribution {
 public:
  MatrixModelLaw(Mat x, int model_dim, int base_dim);
  Mat eval_M(const NilpotentPoint& p) const override;
  Mat matricial_moment(const Mat& b, int order) const override;
  std::optional<CpMap> variance() const override;
  int model_dim() const { return k_; }
  const Mat& x() const { return x_; }

 private:
  Mat x_;
  int k_;
};

// Moments scaled by lambda^n.
class DilatedLaw : public Distribution {
 public:
  DilatedLaw(DistPtr base, double lambda);
  Mat eval_M(const NilpotentPoint& p) const override;
  Mat matricial_moment(const Mat& b, int order) const override;
  std::vector<Mat> moment_table(const Mat& b, int max_order) const override;
  std::optional<CpMap> variance() const override;

 private:
  DistPtr base_;
  double lambda_;
};

DistPtr dilate(DistPtr base, double lambda);

// delta_0, the unit of all three additive convolutions.
DistPtr zero_distribution(int base_dim);

// Moment engines as standalone operations.
Mat bernoulli_moment(const CpMap& eta, const Mat& b, int order);
Mat semicircle_moment(const CpMap& eta, const Mat& b, int order,
                      int enum_cap = kDefaultEnumCap, Exec exec = Exec::Auto);
Mat arcsine_moment_enum(const CpMap& eta, const Mat& b, int order,
                        int enum_cap = kDefaultEnumCap,
                        Exec exec = Exec::Auto);
Mat arcsine_moment_fast(const CpMap& eta, const Mat& b, int order);
Mat matrix_model_moment(const Mat& x, int model_dim, int base_dim,
                        const Mat& b, int order);

// Smallest M with ||mu(X b_1 ... X b_n)|| <= M^{n+1} over the sampled
// unit-spectral-norm tuples, orders 1..order_cap. Diagnostic only.
double moment_growth_bound(const Distribution& dist, int order_cap,
                           int trials, std::uint64_t seed = 2024);

}  // namespace opfp::laws
