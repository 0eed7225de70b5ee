// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

/// Row-major dense matrix. Used for the coarsest-level solve and small
/// reference computations; not intended for large n.
struct DenseMatrix {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(index_t rows, index_t cols)
      : n_rows(rows), n_cols(cols), data(static_cast<size_t>(rows) * cols, 0.0) {}

  double& operator()(index_t i, index_t j) { return data[i * n_cols + j]; }
  double operator()(index_t i, index_t j) const { return data[i * n_cols + j]; }
};

DenseMatrix to_dense(const SparseMatrix& A);

/// LU factorization with partial pivoting, stored in-place.
/// factor() throws Error naming the pivot index if a zero pivot is hit.
struct LuFactors {
  DenseMatrix lu;
  std::vector<index_t> perm;

  void solve(std::span<const double> b, std::span<double> x) const;
  Vector solve(const Vector& b) const;
};

LuFactors lu_factor(const DenseMatrix& A);

/// Eigenvalues of a small upper-Hessenberg matrix (shifted QR, eigenvalues
/// only). Complex pairs come out of trailing 2x2 blocks.
std::vector<std::complex<double>> hessenberg_eigenvalues(DenseMatrix H);

}  // namespace aggmg
