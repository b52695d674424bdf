// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/cp_map.hpp"

#include <cmath>

namespace opfp {

namespace {
constexpr double kHermTol = 1e-12;
}

CpMap::CpMap(std::vector<Mat> kraus, long weight_num, long weight_den)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ArgumentError("Kraus list must be non-empty");
  dim_ = static_cast<int>(kraus_.front().rows());
  if (weight_num <= 0 || weight_den <= 0) {
    weight_num_ = 1;
    weight_den_ = static_cast<long>(kraus_.size());
  } else {
    weight_num_ = weight_num;
    weight_den_ = weight_den;
  }
  weight_ = static_cast<double>(weight_num_) / static_cast<double>(weight_den_);
  for (const Mat& a : kraus_) {
    if (a.rows() != dim_ || a.cols() != dim_)
      throw DimensionError("Kraus operators must be square of equal size");
    double dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (dev > kHermTol * scale)
      throw ArgumentError("Kraus operators must be self-adjoint");
  }
}

CpMap CpMap::identity(int dim) {
  return CpMap({Mat::Identity(dim, dim)}, 1, 1);
}

CpMap CpMap::scaled_identity(int dim, double c) {
  if (c <= 0.0) throw ArgumentError("scale must be positive");
  // c*b = (sqrt(c) 1) b (sqrt(c) 1)
  return CpMap({std::sqrt(c) * Mat::Identity(dim, dim)}, 1, 1);
}

Mat CpMap::apply(const Mat& b) const {
  const int m = level_of(b, dim_);
  Mat out = Mat::Zero(b.rows(), b.cols());
  for (const Mat& a : kraus_) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out.block(i * dim_, j * dim_, dim_, dim_).noalias() +=
            a * block_of(b, i, j, dim_) * a;
  }
  return weight_ * out;
}

CpMap CpMap::scaled(double c) const {
  if (c <= 0.0) throw ArgumentError("scale must be positive");
  // Absorb sqrt(c) into the Kraus operators; self-adjointness is preserved.
  std::vector<Mat> k = kraus_;
  for (Mat& a : k) a *= std::sqrt(c);
  return CpMap(std::move(k), weight_num_, weight_den_);
}

double CpMap::unit_norm() const {
  return spectral_norm(apply(Mat::Identity(dim_, dim_)));
}

}  // namespace opfp
