// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <vector>

#include "opfp/matrix_ops.hpp"

namespace opfp {

// Completely positive variance map in Kraus form,
//   eta(b) = weight * sum_j a_j b a_j,
// with self-adjoint d x d Kraus operators a_j. Applied at level m it acts
// blockwise, which is the amplification eta (x) 1_m on M_m(B).
class CpMap {
 public:
  // weight_num/weight_den <= 0 selects the default weight 1/len(kraus).
  CpMap(std::vector<Mat> kraus, long weight_num = 0, long weight_den = 0);

  static CpMap identity(int dim);          // eta(b) = b
  static CpMap scaled_identity(int dim, double c);  // eta(b) = c*b, c > 0

  int dim() const { return dim_; }
  const std::vector<Mat>& kraus() const { return kraus_; }
  double weight() const { return weight_; }
  long weight_num() const { return weight_num_; }
  long weight_den() const { return weight_den_; }

  // eta amplified to the level of b; b must be a square matrix whose size is
  // a multiple of dim().
  Mat apply(const Mat& b) const;

  // Scaled map c*eta.
  CpMap scaled(double c) const;

  // Spectral norm of eta(1), used as a scale for iteration lifts.
  double unit_norm() const;

 private:
  std::vector<Mat> kraus_;
  int dim_;
  double weight_;
  long weight_num_, weight_den_;
};

}  // namespace opfp
