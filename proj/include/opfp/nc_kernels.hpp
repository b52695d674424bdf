// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <unordered_map>

#include "opfp/cp_map.hpp"
#include "opfp/nc_partitions.hpp"

namespace opfp::laws {

enum class Exec { Auto, Serial, Parallel };

// Nesting rule for the enclosure step of the partition recurrences:
// the semicircle weight W uses eta(b W b), the arcsine weight V divides the
// same expression by (inner blocks + 1).
enum class NestWeight { Semicircle, Arcsine };

using WeightMemo = std::unordered_map<std::string, Mat>;

// Weight of a single partition at argument b, through the canonical
// atom / enclosure / juxtaposition decomposition. The memo is keyed by the
// partition encoding and is only valid for one fixed (eta, b, kind).
Mat nc_weight(const nc::NcPairPartition& g, const CpMap& eta, const Mat& b,
              NestWeight kind, WeightMemo& memo);

// sum over NC_2(order) of weight(gamma, b) * b; identity for order 0, zero
// for odd order. The parallel path computes per-partition terms
// independently and reduces them in enumeration order, so Serial and
// Parallel agree bit for bit.
Mat nc_weighted_moment(const CpMap& eta, const Mat& b, int order,
                       NestWeight kind, Exec exec = Exec::Auto);

// One term of the sum, exposed for weight-comparison tests.
Mat nc_moment_term(const nc::NcPairPartition& g, const CpMap& eta,
                   const Mat& b, NestWeight kind);

}  // namespace opfp::laws
