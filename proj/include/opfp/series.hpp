// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include "opfp/distribution.hpp"

namespace opfp::series {

// Inverse of a unipotent matrix I + K with K nilpotent of the given index,
// by the finite Neumann series. Keeps structural zeros exact, which the
// nilpotent-point machinery relies on.
Mat unipotent_inverse(const Mat& m, int index);

// Transform evaluations, exact at nilpotent points.
Mat eval_M(const Distribution& d, const NilpotentPoint& p);
Mat eval_H(const Distribution& d, const NilpotentPoint& p);

// B(p) = (M(p) - 1) M(p)^{-1}; nilpotent.
Mat eval_B(const Distribution& d, const NilpotentPoint& p);

// R(c) = M(b_c) - 1 where b_c solves b_c M(b_c) = c, found by the finite
// iteration b <- c M(b)^{-1} which fixes one homogeneous order per step.
Mat eval_R(const Distribution& d, const NilpotentPoint& c);

// Additive convolutions at the moment level. order_cap bounds the orders the
// result can produce; factor caps must cover it (one extra order for the
// monotone composition, which consumes a slot on its prefix embedding).
DistPtr free_convolve(DistPtr mu, DistPtr nu, int order_cap);
DistPtr boolean_convolve(DistPtr mu, DistPtr nu, int order_cap);
DistPtr monotone_convolve(DistPtr mu, DistPtr nu, int order_cap);

// Convolution powers through the linearizing transforms: t*B for Boolean,
// t*R for free, n-fold composition for monotone.
DistPtr boolean_power(DistPtr mu, double t, int order_cap);
DistPtr free_power(DistPtr mu, double t, int order_cap);
DistPtr monotone_power(DistPtr mu, int n, int order_cap);

}  // namespace opfp::series
