// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/sparse.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"

namespace aggmg {

double SparseMatrix::at(index_t i, index_t j) const {
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return values[row_offsets[i] + (it - cols.begin())];
}

void SparseMatrix::validate() const {
  require(n_rows >= 0 && n_cols >= 0, "negative dimensions");
  require(static_cast<index_t>(row_offsets.size()) == n_rows + 1,
          "row_offsets length must be n_rows + 1");
  require(row_offsets.front() == 0, "row_offsets[0] must be 0");
  require(row_offsets.back() == nnz(), "row_offsets[n_rows] must equal nnz");
  require(col_indices.size() == values.size(), "col/value length mismatch");
  for (index_t i = 0; i < n_rows; ++i) {
    require(row_offsets[i] <= row_offsets[i + 1], "row_offsets must be non-decreasing");
    const auto cols = row_cols(i);
    for (size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] < 0 || cols[k] >= n_cols)
        throw Error("column index out of range in row " + std::to_string(i));
      if (k > 0 && cols[k - 1] >= cols[k])
        throw Error("columns must be strictly increasing in row " + std::to_string(i));
    }
  }
}

SparseMatrix SparseMatrix::identity(index_t n) {
  SparseMatrix I(n, n);
  I.col_indices.resize(n);
  I.values.assign(n, 1.0);
  for (index_t i = 0; i < n; ++i) {
    I.row_offsets[i + 1] = i + 1;
    I.col_indices[i] = i;
  }
  return I;
}

void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
  if (A.n_cols != static_cast<index_t>(x.size()))
    throw Error("spmv: matrix has " + std::to_string(A.n_cols) + " columns but vector has " +
                std::to_string(x.size()) + " entries");
  require(A.n_rows == static_cast<index_t>(y.size()), "spmv: output length mismatch");
  parallel_for(A.n_rows, [&](index_t i) {
    double sum = 0.0;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      sum += A.values[k] * x[A.col_indices[k]];
    y[i] = sum;
  });
}

Vector spmv(const SparseMatrix& A, const Vector& x) {
  Vector y(A.n_rows);
  spmv(A, x, y);
  return y;
}

SparseMatrix spmm(const SparseMatrix& A, const SparseMatrix& B) {
  require(A.n_cols == B.n_rows,
          "spmm: inner dimensions differ (" + std::to_string(A.n_cols) + " vs " +
              std::to_string(B.n_rows) + ")");
  SparseMatrix C(A.n_rows, B.n_cols);

  // Symbolic pass: per-row structural counts via a marker workspace.
  std::vector<index_t> row_nnz(A.n_rows, 0);
  parallel_ranges(A.n_rows, [&](int, index_t lo, index_t hi) {
    std::vector<index_t> mark(B.n_cols, -1);
    for (index_t i = lo; i < hi; ++i) {
      index_t count = 0;
      for (index_t ka = A.row_offsets[i]; ka < A.row_offsets[i + 1]; ++ka) {
        const index_t k = A.col_indices[ka];
        for (index_t kb = B.row_offsets[k]; kb < B.row_offsets[k + 1]; ++kb) {
          const index_t j = B.col_indices[kb];
          if (mark[j] != i) {
            mark[j] = i;
            ++count;
          }
        }
      }
      row_nnz[i] = count;
    }
  });
  std::inclusive_scan(row_nnz.begin(), row_nnz.end(), C.row_offsets.begin() + 1);
  C.col_indices.resize(C.row_offsets.back());
  C.values.resize(C.row_offsets.back());

  // Numeric pass: accumulate in the order of A's row entries, then emit the
  // touched columns sorted.
  parallel_ranges(A.n_rows, [&](int, index_t lo, index_t hi) {
    std::vector<double> acc(B.n_cols, 0.0);
    std::vector<index_t> mark(B.n_cols, -1);
    std::vector<index_t> touched;
    for (index_t i = lo; i < hi; ++i) {
      touched.clear();
      for (index_t ka = A.row_offsets[i]; ka < A.row_offsets[i + 1]; ++ka) {
        const index_t k = A.col_indices[ka];
        const double av = A.values[ka];
        for (index_t kb = B.row_offsets[k]; kb < B.row_offsets[k + 1]; ++kb) {
          const index_t j = B.col_indices[kb];
          if (mark[j] != i) {
            mark[j] = i;
            acc[j] = 0.0;
            touched.push_back(j);
          }
          acc[j] += av * B.values[kb];
        }
      }
      std::sort(touched.begin(), touched.end());
      index_t out = C.row_offsets[i];
      for (const index_t j : touched) {
        C.col_indices[out] = j;
        C.values[out] = acc[j];
        ++out;
      }
    }
  });
  return C;
}

SparseMatrix transpose(const SparseMatrix& A) {
  SparseMatrix T(A.n_cols, A.n_rows);
  T.col_indices.resize(A.nnz());
  T.values.resize(A.nnz());
  std::vector<index_t> count(A.n_cols, 0);
  for (const index_t j : A.col_indices) ++count[j];
  std::exclusive_scan(count.begin(), count.end(), T.row_offsets.begin(), index_t{0});
  T.row_offsets[A.n_cols] = A.nnz();
  std::vector<index_t> next(T.row_offsets.begin(), T.row_offsets.end() - 1);
  // Row-major scatter keeps each output row sorted by construction.
  for (index_t i = 0; i < A.n_rows; ++i) {
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const index_t pos = next[A.col_indices[k]]++;
      T.col_indices[pos] = i;
      T.values[pos] = A.values[k];
    }
  }
  return T;
}

SparseMatrix triplets_to_csr(const TripletList& t) {
  for (index_t k = 0; k < t.size(); ++k) {
    if (t.rows[k] < 0 || t.rows[k] >= t.n_rows || t.cols[k] < 0 || t.cols[k] >= t.n_cols)
      throw Error("triplet (" + std::to_string(t.rows[k]) + ", " + std::to_string(t.cols[k]) +
                  ") outside shape " + std::to_string(t.n_rows) + "x" +
                  std::to_string(t.n_cols));
  }
  std::vector<index_t> order(t.size());
  std::iota(order.begin(), order.end(), index_t{0});
  std::stable_sort(order.begin(), order.end(), [&](index_t a, index_t b) {
    if (t.rows[a] != t.rows[b]) return t.rows[a] < t.rows[b];
    return t.cols[a] < t.cols[b];
  });
  SparseMatrix A(t.n_rows, t.n_cols);
  index_t k = 0;
  while (k < t.size()) {
    const index_t i = t.rows[order[k]];
    const index_t j = t.cols[order[k]];
    double sum = 0.0;
    while (k < t.size() && t.rows[order[k]] == i && t.cols[order[k]] == j)
      sum += t.values[order[k++]];
    A.col_indices.push_back(j);
    A.values.push_back(sum);
    A.row_offsets[i + 1] = static_cast<index_t>(A.col_indices.size());
  }
  for (index_t i = 0; i < t.n_rows; ++i)
    A.row_offsets[i + 1] = std::max(A.row_offsets[i + 1], A.row_offsets[i]);
  return A;
}

}  // namespace aggmg
