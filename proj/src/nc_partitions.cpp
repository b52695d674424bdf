// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/nc_partitions.hpp"

#include <algorithm>

namespace opfp::nc {

NcPairPartition::NcPairPartition(int n, std::vector<std::pair<int, int>> pairs)
    : n_(n), pairs_(std::move(pairs)) {
  if (n < 0) throw ArgumentError("ground-set size must be non-negative");
  if (n % 2 != 0 || static_cast<int>(pairs_.size()) * 2 != n)
    throw ArgumentError("pair list does not cover the ground set");
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<char> seen(n + 1, 0);
  for (auto& [i, j] : pairs_) {
    if (i < 1 || j < 1 || i > n || j > n || i >= j)
      throw ArgumentError("pair out of range or not increasing");
    if (seen[i] || seen[j]) throw ArgumentError("element covered twice");
    seen[i] = seen[j] = 1;
  }
  for (auto& [i, j] : pairs_)
    for (auto& [k, l] : pairs_)
      if (i < k && k < j && j < l)
        throw ArgumentError("crossing pairs");
}

int NcPairPartition::partner(int i) const {
  for (auto& [a, b] : pairs_) {
    if (a == i) return b;
    if (b == i) return a;
  }
  throw ArgumentError("element not in ground set");
}

std::string NcPairPartition::encode() const {
  std::string s;
  s.reserve(pairs_.size() * 2);
  for (auto& [a, b] : pairs_) {
    s.push_back(static_cast<char>(a));
    s.push_back(static_cast<char>(b));
  }
  return s;
}

namespace {

// Relabel a set of pairs living on positions [lo, hi] to {1..hi-lo+1}.
std::vector<std::pair<int, int>> shift_pairs(
    const std::vector<std::pair<int, int>>& pairs, int delta) {
  std::vector<std::pair<int, int>> out;
  out.reserve(pairs.size());
  for (auto& [a, b] : pairs) out.emplace_back(a + delta, b + delta);
  return out;
}

}  // namespace

std::vector<NcPairPartition> enumerate_nc2(int n) {
  if (n < 0) throw ArgumentError("ground-set size must be non-negative");
  if (n % 2 != 0) return {};
  if (n == 0) return {NcPairPartition()};
  std::vector<NcPairPartition> out;
  // 1 pairs with an even position j; inside {2..j-1} and outside {j+1..n}
  // are independent subproblems. Inner-major nesting keeps the output in
  // lexicographic order of the sorted pair lists.
  for (int j = 2; j <= n; j += 2) {
    auto inner = enumerate_nc2(j - 2);
    auto outer = enumerate_nc2(n - j);
    for (const auto& gi : inner) {
      for (const auto& go : outer) {
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(n / 2);
        pairs.emplace_back(1, j);
        for (auto& p : shift_pairs(gi.pairs(), 1)) pairs.push_back(p);
        for (auto& p : shift_pairs(go.pairs(), j)) pairs.push_back(p);
        out.emplace_back(n, std::move(pairs));
      }
    }
  }
  return out;
}

Decomposition decompose(const NcPairPartition& g) {
  const int n = g.ground_size();
  if (n == 0) throw ArgumentError("cannot decompose the empty partition");
  Decomposition d;
  if (n == 2) {
    d.kind = Decomposition::Kind::Atom;
    return d;
  }
  const int j = g.partner(1);
  if (j == n) {
    // (1, n) encloses everything else.
    std::vector<std::pair<int, int>> inner;
    for (auto& [a, b] : g.pairs())
      if (a != 1) inner.emplace_back(a - 1, b - 1);
    d.kind = Decomposition::Kind::Tilde;
    d.inner = NcPairPartition(n - 2, std::move(inner));
    return d;
  }
  // Split after the first irreducible component {1..j}.
  std::vector<std::pair<int, int>> left, right;
  for (auto& [a, b] : g.pairs()) {
    if (b <= j)
      left.emplace_back(a, b);
    else
      right.emplace_back(a - j, b - j);
  }
  d.kind = Decomposition::Kind::Concat;
  d.left = NcPairPartition(j, std::move(left));
  d.right = NcPairPartition(n - j, std::move(right));
  return d;
}

NcPairPartition tilde(const NcPairPartition& g) {
  const int n = g.ground_size();
  std::vector<std::pair<int, int>> pairs = shift_pairs(g.pairs(), 1);
  pairs.emplace_back(1, n + 2);
  return NcPairPartition(n + 2, std::move(pairs));
}

NcPairPartition oplus(const NcPairPartition& g1, const NcPairPartition& g2) {
  std::vector<std::pair<int, int>> pairs = g1.pairs();
  for (auto& p : shift_pairs(g2.pairs(), g1.ground_size())) pairs.push_back(p);
  return NcPairPartition(g1.ground_size() + g2.ground_size(),
                         std::move(pairs));
}

std::uint64_t catalan(int m) {
  if (m < 0) throw ArgumentError("negative index");
  std::uint64_t c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace opfp::nc
