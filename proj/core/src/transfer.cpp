// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/transfer.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"

namespace aggmg {

TransferOperators build_transfer(const Aggregation& agg, const Vector& fine_b) {
  require(static_cast<index_t>(fine_b.size()) == agg.n_fine,
          "transfer: near-null-space vector length mismatch");
  const index_t n = agg.n_fine;
  const index_t nc = agg.n_aggregates;

  std::vector<double> sq(nc, 0.0);
  for (index_t i = 0; i < n; ++i) sq[agg.assignment[i]] += fine_b[i] * fine_b[i];

  TransferOperators t;
  t.coarse_b.resize(nc);
  for (index_t a = 0; a < nc; ++a) {
    require(sq[a] > 0.0,
            "transfer: near-null-space vector vanishes on aggregate " + std::to_string(a));
    t.coarse_b[a] = std::sqrt(sq[a]);
  }

  // One entry per row, except rows where fine_b is exactly zero: storing
  // the explicit zero would break the one-NONZERO-per-row reading, so the
  // row stays empty and receives no interpolated correction.
  t.P = SparseMatrix(n, nc);
  for (index_t i = 0; i < n; ++i)
    t.P.row_offsets[i + 1] = t.P.row_offsets[i] + (fine_b[i] != 0.0 ? 1 : 0);
  t.P.col_indices.resize(t.P.row_offsets[n]);
  t.P.values.resize(t.P.row_offsets[n]);
  parallel_for(n, [&](index_t i) {
    if (fine_b[i] == 0.0) return;
    const index_t a = agg.assignment[i];
    const index_t k = t.P.row_offsets[i];
    t.P.col_indices[k] = a;
    t.P.values[k] = fine_b[i] / t.coarse_b[a];
  });
  t.R = transpose(t.P);
  return t;
}

}  // namespace aggmg
