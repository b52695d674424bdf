// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/rng.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

namespace opfp {

double Rng::uniform() {
  // 53-bit mantissa from the top bits of the stream.
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  have_spare_ = true;
  return r * std::cos(th);
}

Complex Rng::cnormal() {
  double re = normal();
  double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

Mat Rng::gaussian(int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cnormal();
  return m;
}

Mat Rng::hermitian(int n) {
  Mat g = gaussian(n, n);
  return Mat((g + g.adjoint()) / 2.0);
}

Mat Rng::unit_spectral(int n) {
  Mat g = gaussian(n, n);
  double s = spectral_norm(g);
  if (s <= 0.0) return Mat::Identity(n, n);
  return Mat(g / s);
}

Mat Rng::halfplane_point(int n, double spread) {
  Mat h = hermitian(n);
  Mat p = gaussian(n, n);
  Mat pos = spread * Mat::Identity(n, n) + p * p.adjoint() / n;
  return h + Complex(0, 1) * pos;
}

Mat Rng::invertible_selfadjoint(int n, double min_gap) {
  Mat h = hermitian(n);
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd vals = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    if (std::abs(vals(i)) < min_gap)
      vals(i) = vals(i) >= 0.0 ? min_gap : -min_gap;
  }
  Mat out = es.eigenvectors() * vals.asDiagonal() *
            es.eigenvectors().adjoint();
  return (out + out.adjoint()) / 2.0;
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag) {
  // FNV-1a over the tag, mixed with the base seed.
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace opfp
