// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "opfp/errors.hpp"

namespace opfp {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// The base algebra is B = M_d(C); a level-m element of M_m(B) is stored as
// one flattened (m*d) x (m*d) dense matrix. Block (i,j), 0-based, occupies
// rows [i*d, (i+1)*d) and columns [j*d, (j+1)*d).

inline Mat block_of(const Mat& m, int i, int j, int d) {
  return m.block(i * d, j * d, d, d);
}

inline int level_of(const Mat& m, int base_dim) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (base_dim < 1 || m.rows() % base_dim != 0)
    throw DimensionError("matrix size is not a multiple of the base dimension");
  return static_cast<int>(m.rows()) / base_dim;
}

// Hermitian and anti-hermitian parts.
inline Mat herm_part(const Mat& m) { return (m + m.adjoint()) / 2.0; }
inline Mat imag_part(const Mat& m) {
  return (m - m.adjoint()) / Complex(0.0, 2.0);
}

double spectral_norm(const Mat& m);

// Smallest eigenvalue of the hermitian matrix (m - m*)/2i.
double min_imag_eigenvalue(const Mat& m);

// Membership in the matricial upper half-plane: Im b strictly positive
// definite, with margin eps on the smallest eigenvalue.
bool herm_positive(const Mat& b, double eps = 1e-10);

// Principal matrix square root via complex Schur form and the triangular
// recurrence. The spectrum must stay clear of the closed negative real axis;
// an eigenvalue within branch_tol of it raises BranchError.
Mat principal_sqrt(const Mat& m, double branch_tol = 1e-12);

// diag(b, ..., b), k diagonal copies.
Mat diag_lift(const Mat& b, int k);

// Block-diagonal matrix from the given same-size blocks.
Mat block_diag(const std::vector<Mat>& blocks);

// Normalized partial trace M_k(B) -> B for a flattened (k*s) x (k*s) matrix
// with inner block size s: averages the k diagonal s x s blocks.
Mat partial_trace(const Mat& m, int k);

// Matrix with b_1, ..., b_n on the block superdiagonal, zero elsewhere.
// All b_i must be square of equal size; the result has n+1 block levels.
Mat superdiag_matrix(const std::vector<Mat>& blocks);

// The (1, n+1) block of a level-(n+1) element, 1-based block indices.
Mat corner_block(const Mat& m, int base_dim);

}  // namespace opfp
