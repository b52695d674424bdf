// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "opfp/cp_map.hpp"
#include "opfp/nilpotent.hpp"

namespace opfp {

// A B-valued distribution exposed through its moment data. The one primitive
// every implementation must provide is the exact evaluation of the
// moment-generating series
//   M(p) = sum_k mu~((X p)^k)
// at strictly upper-triangular nilpotent points, where the sum is finite.
// Moments at arbitrary arguments are recovered from superdiagonal
// embeddings: with E = superdiag(b, ..., b) of n copies, the block (1, k+1)
// of M(E) is the order-k moment mu~((X b)^k), and with distinct blocks it is
// the multilinear moment mu(X b_1 ... X b_k).
class Distribution {
 public:
  virtual ~Distribution() = default;

  int base_dim() const { return base_dim_; }
  int order_cap() const { return order_cap_; }

  // Exact finite moment-generating series at a nilpotent point.
  virtual Mat eval_M(const NilpotentPoint& p) const = 0;

  // H(p) = p * M(p).
  virtual Mat eval_H(const NilpotentPoint& p) const;

  // mu~((X b)^n); the level is inferred from the size of b.
  virtual Mat matricial_moment(const Mat& b, int order) const;

  // Moments 0..max_order at fixed b, one embedding evaluation by default.
  virtual std::vector<Mat> moment_table(const Mat& b, int max_order) const;

  // mu(X b_1 X b_2 ... X b_n), arguments of base dimension.
  Mat multilinear_moment(const std::vector<Mat>& args) const;

  // The variance map b -> mu(X b X) in Kraus form, when it has one with
  // self-adjoint operators.
  virtual std::optional<CpMap> variance() const { return std::nullopt; }

 protected:
  Distribution(int base_dim, int order_cap)
      : base_dim_(base_dim), order_cap_(order_cap) {}

  void check_capacity(int order) const {
    if (order > order_cap_)
      throw CapacityError("moment order exceeds the configured cap");
  }

  // Default eval_M for moment-engine distributions: plain sum of moments up
  // to the nilpotency index.
  Mat sum_of_moments(const NilpotentPoint& p) const;

  int base_dim_;
  int order_cap_;
};

using DistPtr = std::shared_ptr<const Distribution>;

}  // namespace opfp
