// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/strength.hpp"

#include <algorithm>
#include <string>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"

namespace aggmg {

namespace {

double row_sign(const SparseMatrix& A, index_t i, ZeroDiagPolicy policy) {
  const double d = A.at(i, i);
  if (d == 0.0) {
    require(policy == ZeroDiagPolicy::positive,
            "strength: zero or missing diagonal at row " + std::to_string(i));
    return 1.0;
  }
  return d > 0.0 ? 1.0 : -1.0;
}

}  // namespace

SparseMatrix classic_strength(const SparseMatrix& A, double alpha, ZeroDiagPolicy policy) {
  require(A.n_rows == A.n_cols, "strength: matrix must be square");
  require(alpha > 0.0 && alpha < 1.0, "strength: alpha must be in (0, 1)");
  const index_t n = A.n_rows;
  SparseMatrix C(n, n);
  std::vector<index_t> row_nnz(n, 0);
  std::vector<double> sign(n), threshold(n);

  parallel_for(n, [&](index_t i) {
    const double s = row_sign(A, i, policy);
    double max_m = 0.0;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      if (A.col_indices[k] == i) continue;
      max_m = std::max(max_m, -s * A.values[k]);
    }
    const double thr = alpha * max_m;
    index_t count = 0;
    if (max_m > 0.0) {
      for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
        if (A.col_indices[k] == i) continue;
        if (-s * A.values[k] > thr) ++count;
      }
    }
    sign[i] = s;
    threshold[i] = thr;
    row_nnz[i] = (max_m > 0.0) ? count : -1;  // -1 flags an empty row
  });

  C.row_offsets[0] = 0;
  for (index_t i = 0; i < n; ++i)
    C.row_offsets[i + 1] = C.row_offsets[i] + std::max<index_t>(row_nnz[i], 0);
  C.col_indices.resize(C.row_offsets[n]);
  C.values.assign(C.row_offsets[n], 1.0);

  parallel_for(n, [&](index_t i) {
    if (row_nnz[i] <= 0) return;
    index_t p = C.row_offsets[i];
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const index_t j = A.col_indices[k];
      if (j == i) continue;
      if (-sign[i] * A.values[k] > threshold[i]) C.col_indices[p++] = j;
    }
  });
  return C;
}

std::vector<index_t> influence_counts(const SparseMatrix& C) {
  std::vector<index_t> counts(C.n_cols, 0);
  for (const index_t j : C.col_indices) ++counts[j];
  return counts;
}

SparseMatrix symmetrize_pattern(const SparseMatrix& C) {
  require(C.n_rows == C.n_cols, "symmetrize: matrix must be square");
  const SparseMatrix T = transpose(C);
  const index_t n = C.n_rows;
  SparseMatrix S(n, n);
  std::vector<index_t> row_nnz(n);
  const auto merge_row = [&](index_t i, index_t* out) -> index_t {
    index_t a = C.row_offsets[i], ae = C.row_offsets[i + 1];
    index_t b = T.row_offsets[i], be = T.row_offsets[i + 1];
    index_t count = 0;
    while (a < ae || b < be) {
      index_t j;
      if (b >= be || (a < ae && C.col_indices[a] <= T.col_indices[b])) {
        j = C.col_indices[a];
        if (b < be && T.col_indices[b] == j) ++b;
        ++a;
      } else {
        j = T.col_indices[b++];
      }
      if (out) out[count] = j;
      ++count;
    }
    return count;
  };
  parallel_for(n, [&](index_t i) { row_nnz[i] = merge_row(i, nullptr); });
  S.row_offsets[0] = 0;
  for (index_t i = 0; i < n; ++i) S.row_offsets[i + 1] = S.row_offsets[i] + row_nnz[i];
  S.col_indices.resize(S.row_offsets[n]);
  S.values.assign(S.row_offsets[n], 1.0);
  parallel_for(n, [&](index_t i) { merge_row(i, S.col_indices.data() + S.row_offsets[i]); });
  return S;
}

}  // namespace aggmg
