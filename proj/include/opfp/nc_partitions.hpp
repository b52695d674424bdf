// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "opfp/errors.hpp"

namespace opfp::nc {

// A non-crossing perfect matching of {1..n}, stored as pairs (i, j), i < j,
// sorted by the first element. Validated on construction.
class NcPairPartition {
 public:
  NcPairPartition() = default;  // the empty partition of the empty set
  NcPairPartition(int n, std::vector<std::pair<int, int>> pairs);

  int ground_size() const { return n_; }
  int block_count() const { return static_cast<int>(pairs_.size()); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  // Partner of element i (1-based).
  int partner(int i) const;

  // Compact canonical encoding, usable as a memo key.
  std::string encode() const;

  bool operator==(const NcPairPartition& other) const {
    return n_ == other.n_ && pairs_ == other.pairs_;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> pairs_;
};

// Every non-crossing pair partition decomposes uniquely as the atom {(1,2)},
// an enclosure tilde(inner) when (1,n) is a block, or the juxtaposition of
// its first irreducible component with the rest.
struct Decomposition {
  enum class Kind { Atom, Tilde, Concat };
  Kind kind;
  NcPairPartition inner;  // Tilde
  NcPairPartition left, right;  // Concat
};

// All of NC_2(n) in lexicographic order of the sorted pair list; empty for
// odd n, the singleton {empty} for n = 0. Count is Catalan(n/2).
std::vector<NcPairPartition> enumerate_nc2(int n);

Decomposition decompose(const NcPairPartition& g);

// Enclosure: adds the outer pair (1, n+2) around g shifted by one.
NcPairPartition tilde(const NcPairPartition& g);

// Juxtaposition of g1 and g2 in this order.
NcPairPartition oplus(const NcPairPartition& g1, const NcPairPartition& g2);

std::uint64_t catalan(int m);

}  // namespace opfp::nc
