// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <vector>

#include "opfp/matrix_ops.hpp"

namespace opfp {

// A strictly block-upper-triangular matricial argument. At such points every
// transform series is an exact finite sum; `index` is the smallest r with
// value^r = 0, computed as one plus the longest path in the DAG of nonzero
// blocks, so it bounds the word length of any nonvanishing moment as well.
struct NilpotentPoint {
  Mat value;
  int base_dim = 1;
  int level = 1;
  int index = 1;

  static NilpotentPoint from_strict_upper(Mat value, int base_dim);
};

// Embedding with b_1, ..., b_n on the block superdiagonal; nilpotency index
// is exactly n+1.
NilpotentPoint superdiag_embed(const std::vector<Mat>& blocks);

}  // namespace opfp
