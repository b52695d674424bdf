// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/nilpotent.hpp"

#include <algorithm>

namespace opfp {

namespace {

bool block_nonzero(const Mat& m, int i, int j, int d) {
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (m(i * d + r, j * d + c) != Complex(0.0, 0.0)) return true;
  return false;
}

}  // namespace

NilpotentPoint NilpotentPoint::from_strict_upper(Mat value, int base_dim) {
  NilpotentPoint p;
  p.base_dim = base_dim;
  p.level = level_of(value, base_dim);
  const int d = base_dim;
  const int L = p.level;
  for (int i = 0; i < L; ++i)
    for (int j = 0; j <= i; ++j)
      if (block_nonzero(value, i, j, d))
        throw ArgumentError("matrix is not strictly block-upper-triangular");

  // Longest path through nonzero blocks; dp over the natural topological
  // order j > i of the strictly upper pattern.
  std::vector<int> dp(L, 0);
  for (int i = L - 2; i >= 0; --i)
    for (int j = i + 1; j < L; ++j)
      if (block_nonzero(value, i, j, d)) dp[i] = std::max(dp[i], 1 + dp[j]);
  p.index = 1 + *std::max_element(dp.begin(), dp.end());
  p.value = std::move(value);
  return p;
}

NilpotentPoint superdiag_embed(const std::vector<Mat>& blocks) {
  if (blocks.empty())
    throw ArgumentError("superdiagonal embedding needs at least one block");
  const int d = static_cast<int>(blocks.front().rows());
  return NilpotentPoint::from_strict_upper(superdiag_matrix(blocks), d);
}

}  // namespace opfp
