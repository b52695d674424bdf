// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "opfp/matrix_ops.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace opfp {

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(m.adjoint() * m),
                                        Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

double min_imag_eigenvalue(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  Eigen::SelfAdjointEigenSolver<Mat> es(imag_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool herm_positive(const Mat& b, double eps) {
  return min_imag_eigenvalue(b) > eps;
}

Mat principal_sqrt(const Mat& m, double branch_tol) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  const int n = static_cast<int>(m.rows());
  Eigen::ComplexSchur<Mat> schur(m);
  const Mat& t = schur.matrixT();
  const Mat& u = schur.matrixU();

  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    Complex lam = t(i, i);
    // Distance from lam to the closed negative real axis (including 0).
    double dist = lam.real() <= 0.0 ? std::abs(lam.imag()) : std::abs(lam);
    if (dist <= branch_tol * scale)
      throw BranchError("eigenvalue on the closed negative real axis");
  }

  // Triangular square root, principal scalar branch on the diagonal.
  Mat s = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) s(i, i) = std::sqrt(t(i, i));
  for (int off = 1; off < n; ++off) {
    for (int i = 0; i + off < n; ++i) {
      int j = i + off;
      Complex acc = t(i, j);
      for (int k = i + 1; k < j; ++k) acc -= s(i, k) * s(k, j);
      Complex denom = s(i, i) + s(j, j);
      if (std::abs(denom) <= branch_tol * scale)
        throw BranchError("vanishing diagonal pair in triangular sqrt");
      s(i, j) = acc / denom;
    }
  }
  return u * s * u.adjoint();
}

Mat diag_lift(const Mat& b, int k) {
  if (k < 1) throw ArgumentError("lift count must be positive");
  const int n = static_cast<int>(b.rows());
  Mat out = Mat::Zero(n * k, n * k);
  for (int i = 0; i < k; ++i) out.block(i * n, i * n, n, n) = b;
  return out;
}

Mat block_diag(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw ArgumentError("no blocks given");
  const int d = static_cast<int>(blocks.front().rows());
  const int k = static_cast<int>(blocks.size());
  Mat out = Mat::Zero(d * k, d * k);
  for (int i = 0; i < k; ++i) {
    if (blocks[i].rows() != d || blocks[i].cols() != d)
      throw DimensionError("block sizes differ");
    out.block(i * d, i * d, d, d) = blocks[i];
  }
  return out;
}

Mat partial_trace(const Mat& m, int k) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (k < 1 || m.rows() % k != 0)
    throw DimensionError("size is not a multiple of the trace index");
  const int s = static_cast<int>(m.rows()) / k;
  Mat out = Mat::Zero(s, s);
  for (int u = 0; u < k; ++u) out += m.block(u * s, u * s, s, s);
  return out / static_cast<double>(k);
}

Mat superdiag_matrix(const std::vector<Mat>& blocks) {
  if (blocks.empty())
    throw ArgumentError("superdiagonal embedding needs at least one block");
  const int d = static_cast<int>(blocks.front().rows());
  const int n = static_cast<int>(blocks.size());
  Mat out = Mat::Zero(d * (n + 1), d * (n + 1));
  for (int i = 0; i < n; ++i) {
    if (blocks[i].rows() != d || blocks[i].cols() != d)
      throw DimensionError("superdiagonal blocks must share one size");
    out.block(i * d, (i + 1) * d, d, d) = blocks[i];
  }
  return out;
}

Mat corner_block(const Mat& m, int base_dim) {
  const int lev = level_of(m, base_dim);
  return block_of(m, 0, lev - 1, base_dim);
}

}  // namespace opfp
