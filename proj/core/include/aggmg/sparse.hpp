// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AGGMG_SPARSE_HPP
#define AGGMG_SPARSE_HPP

#include <span>
#include <vector>

#include "aggmg/types.hpp"

namespace aggmg {

/// Compressed sparse row matrix in canonical form: row_offsets is
/// non-decreasing with row_offsets[0] == 0, and within each row the column
/// indices are strictly increasing with no duplicates. All kernels assume
/// and preserve this form.
struct SparseMatrix {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<index_t> row_offsets;  // length n_rows + 1
  std::vector<index_t> col_indices;  // length nnz
  std::vector<double> values;        // length nnz

  SparseMatrix() : row_offsets(1, 0) {}
  SparseMatrix(index_t rows, index_t cols)
      : n_rows(rows), n_cols(cols), row_offsets(static_cast<size_t>(rows) + 1, 0) {}

  index_t nnz() const { return static_cast<index_t>(col_indices.size()); }

  std::span<const index_t> row_cols(index_t i) const {
    return {col_indices.data() + row_offsets[i],
            static_cast<size_t>(row_offsets[i + 1] - row_offsets[i])};
  }
  std::span<const double> row_vals(index_t i) const {
    return {values.data() + row_offsets[i],
            static_cast<size_t>(row_offsets[i + 1] - row_offsets[i])};
  }

  /// Value at (i, j), 0 if the entry is structurally absent.
  double at(index_t i, index_t j) const;

  /// Throws Error if any canonical-form invariant is violated.
  void validate() const;

  static SparseMatrix identity(index_t n);
};

/// Unordered (row, col, value) staging list; duplicates allowed and summed
/// on conversion to CSR.
struct TripletList {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<index_t> rows;
  std::vector<index_t> cols;
  std::vector<double> values;

  TripletList() = default;
  TripletList(index_t r, index_t c) : n_rows(r), n_cols(c) {}

  void add(index_t i, index_t j, double v) {
    rows.push_back(i);
    cols.push_back(j);
    values.push_back(v);
  }
  index_t size() const { return static_cast<index_t>(values.size()); }
};

/// y = A x
Vector spmv(const SparseMatrix& A, const Vector& x);
void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y);

/// Canonical-form sparse product A B. The structural pattern is the union of
/// contributing paths with no numeric dropping; each output value accumulates
/// contributions in the order of A's row entries.
SparseMatrix spmm(const SparseMatrix& A, const SparseMatrix& B);

SparseMatrix transpose(const SparseMatrix& A);

/// Duplicates are summed in (row, col, original position) order, so the
/// result is reproducible run to run.
SparseMatrix triplets_to_csr(const TripletList& t);

inline SparseMatrix identity(index_t n) { return SparseMatrix::identity(n); }

}  // namespace aggmg

#endif
