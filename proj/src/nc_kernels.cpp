// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/nc_kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace opfp::laws {

Mat nc_weight(const nc::NcPairPartition& g, const CpMap& eta, const Mat& b,
              NestWeight kind, WeightMemo& memo) {
  const std::string key = g.encode();
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  Mat w;
  const nc::Decomposition d = nc::decompose(g);
  switch (d.kind) {
    case nc::Decomposition::Kind::Atom:
      w = eta.apply(b);
      break;
    case nc::Decomposition::Kind::Tilde: {
      Mat inner = nc_weight(d.inner, eta, b, kind, memo);
      w = eta.apply(b * inner * b);
      if (kind == NestWeight::Arcsine)
        w /= static_cast<double>(d.inner.block_count() + 1);
      break;
    }
    case nc::Decomposition::Kind::Concat: {
      Mat left = nc_weight(d.left, eta, b, kind, memo);
      Mat right = nc_weight(d.right, eta, b, kind, memo);
      w = left * b * right;
      break;
    }
  }
  memo.emplace(key, w);
  return w;
}

Mat nc_moment_term(const nc::NcPairPartition& g, const CpMap& eta,
                   const Mat& b, NestWeight kind) {
  WeightMemo memo;
  return nc_weight(g, eta, b, kind, memo) * b;
}

Mat nc_weighted_moment(const CpMap& eta, const Mat& b, int order,
                       NestWeight kind, Exec exec) {
  if (order < 0) throw ArgumentError("negative moment order");
  if (order == 0) return Mat::Identity(b.rows(), b.cols());
  if (order % 2 != 0) return Mat::Zero(b.rows(), b.cols());

  const auto partitions = nc::enumerate_nc2(order);
  const int count = static_cast<int>(partitions.size());

  bool parallel = exec == Exec::Parallel;
  if (exec == Exec::Auto) parallel = count >= 64;
#ifndef _OPENMP
  parallel = false;
#endif

  std::vector<Mat> terms(count);
  if (parallel) {
#pragma omp parallel
    {
      WeightMemo memo;
#pragma omp for schedule(dynamic, 8)
      for (int i = 0; i < count; ++i)
        terms[i] = nc_weight(partitions[i], eta, b, kind, memo) * b;
    }
  } else {
    WeightMemo memo;
    for (int i = 0; i < count; ++i)
      terms[i] = nc_weight(partitions[i], eta, b, kind, memo) * b;
  }

  // Fixed-order reduction keeps the result independent of the thread count.
  Mat sum = Mat::Zero(b.rows(), b.cols());
  for (const Mat& t : terms) sum += t;
  return sum;
}

}  // namespace opfp::laws
