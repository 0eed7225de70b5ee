// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "aggmg/aggregation.hpp"
#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

/// Coarse operator by explicit triple product R * A * P.
SparseMatrix galerkin_direct(const SparseMatrix& R, const SparseMatrix& A,
                             const SparseMatrix& P);

/// Precomputed map from fine nonzeros to coarse nonzeros. Each fine entry
/// (i, j) lands in coarse pair (assignment[i], assignment[j]); sorting all
/// fine entries by that pair (stable, so row-major fine order survives
/// inside a pair) yields one contiguous segment per coarse nonzero. A
/// value refresh then just re-reduces the segments, in the same order
/// every time, without touching symbolic work.
struct GalerkinCache {
  index_t n_fine = 0;
  index_t n_coarse = 0;
  std::uint64_t pattern_hash = 0;        // fine pattern + assignment fingerprint
  std::vector<index_t> assignment;       // frozen copy of the aggregation map
  std::vector<index_t> coarse_row_offsets;
  std::vector<index_t> coarse_col_indices;
  std::vector<index_t> entry;            // fine nnz slots grouped by coarse pair
  std::vector<index_t> entry_row;        // fine row of each grouped slot
  std::vector<index_t> segment_offsets;  // per coarse nonzero, into entry

  // Scatter view of the same map, used by the numeric refresh so it can
  // stream through A in storage order instead of gathering through the
  // sort permutation. slot_of_csr names the coarse nonzero of each fine
  // nonzero; rows_by_coarse lists fine rows grouped by owning coarse row
  // (ascending inside a group), so each coarse row reduces its segments
  // in exactly the stable-sorted order with no write contention.
  std::vector<index_t> slot_of_csr;      // per fine nonzero, its coarse slot
  std::vector<index_t> rows_by_coarse;   // fine rows grouped by assignment
  std::vector<index_t> agg_row_offsets;  // per coarse row, into rows_by_coarse
};

GalerkinCache build_galerkin_cache(const SparseMatrix& A, const Aggregation& agg);

/// Numeric refresh through the cache. P must be the one-entry-per-row
/// prolongator the cache was built against; A must have the cached
/// pattern, else this throws.
SparseMatrix apply_galerkin_cache(const GalerkinCache& cache, const SparseMatrix& A,
                                  const SparseMatrix& P);

}  // namespace aggmg
