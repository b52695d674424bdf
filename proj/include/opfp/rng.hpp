// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "opfp/matrix_ops.hpp"

namespace opfp {

// Deterministic matrix sampler. Normals come from Box-Muller on the raw
// mt19937_64 stream instead of std::normal_distribution, whose output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();                 // [0, 1)
  double normal();
  Complex cnormal();                // standard complex normal
  Mat gaussian(int rows, int cols); // iid complex normal entries
  Mat hermitian(int n);             // GUE-style, entries O(1)
  Mat unit_spectral(int n);         // random matrix scaled to spectral norm 1

  // H + i(spread*I + P P*), H hermitian: a certified upper half-plane point.
  Mat halfplane_point(int n, double spread = 0.5);

  // Random invertible self-adjoint matrix: hermitian with eigenvalues pushed
  // away from zero by min_gap.
  Mat invertible_selfadjoint(int n, double min_gap = 0.3);

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stable per-check sub-seed derivation.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag);

}  // namespace opfp
