// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/galerkin.hpp"

#include <algorithm>
#include <numeric>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"
#include "aggmg/rng.hpp"

namespace aggmg {

namespace {

// Word-at-a-time mixing; cheap enough to re-check on every refresh.
std::uint64_t mix_words(std::uint64_t h, const std::vector<index_t>& v) {
  for (const index_t w : v) h = hash_mix(h ^ static_cast<std::uint64_t>(w));
  return h;
}

std::uint64_t fingerprint(const SparseMatrix& A, const std::vector<index_t>& assignment) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  h = mix_words(h, A.row_offsets);
  h = mix_words(h, A.col_indices);
  h = mix_words(h, assignment);
  return h;
}

}  // namespace

SparseMatrix galerkin_direct(const SparseMatrix& R, const SparseMatrix& A,
                             const SparseMatrix& P) {
  return spmm(spmm(R, A), P);
}

GalerkinCache build_galerkin_cache(const SparseMatrix& A, const Aggregation& agg) {
  require(A.n_rows == A.n_cols, "galerkin: matrix must be square");
  require(agg.n_fine == A.n_rows, "galerkin: aggregation size mismatch");
  const index_t nnz = A.nnz();
  const index_t nc = agg.n_aggregates;

  GalerkinCache cache;
  cache.n_fine = A.n_rows;
  cache.n_coarse = nc;
  cache.assignment = agg.assignment;
  cache.pattern_hash = fingerprint(A, agg.assignment);

  cache.entry.resize(nnz);
  cache.entry_row.resize(nnz);
  std::vector<index_t> key(nnz);
  parallel_for(A.n_rows, [&](index_t i) {
    const index_t ai = agg.assignment[i];
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      cache.entry[k] = k;
      cache.entry_row[k] = i;
      key[k] = ai * nc + agg.assignment[A.col_indices[k]];
    }
  });
  std::stable_sort(cache.entry.begin(), cache.entry.end(),
                   [&](index_t a, index_t b) { return key[a] < key[b]; });

  std::vector<index_t> rows = std::move(cache.entry_row);
  cache.entry_row.resize(nnz);
  parallel_for(nnz, [&](index_t k) { cache.entry_row[k] = rows[cache.entry[k]]; });

  cache.coarse_row_offsets.assign(nc + 1, 0);
  cache.segment_offsets.push_back(0);
  for (index_t k = 0; k < nnz; ++k) {
    if (k + 1 == nnz || key[cache.entry[k + 1]] != key[cache.entry[k]]) {
      cache.segment_offsets.push_back(k + 1);
      cache.coarse_col_indices.push_back(key[cache.entry[k]] % nc);
      ++cache.coarse_row_offsets[key[cache.entry[k]] / nc + 1];
    }
  }
  std::inclusive_scan(cache.coarse_row_offsets.begin(), cache.coarse_row_offsets.end(),
                      cache.coarse_row_offsets.begin());

  cache.slot_of_csr.resize(nnz);
  const index_t n_seg = static_cast<index_t>(cache.coarse_col_indices.size());
  parallel_for(n_seg, [&](index_t s) {
    for (index_t k = cache.segment_offsets[s]; k < cache.segment_offsets[s + 1]; ++k)
      cache.slot_of_csr[cache.entry[k]] = s;
  });

  cache.agg_row_offsets.assign(nc + 1, 0);
  for (index_t i = 0; i < A.n_rows; ++i) ++cache.agg_row_offsets[agg.assignment[i] + 1];
  std::inclusive_scan(cache.agg_row_offsets.begin(), cache.agg_row_offsets.end(),
                      cache.agg_row_offsets.begin());
  cache.rows_by_coarse.resize(A.n_rows);
  std::vector<index_t> cursor(cache.agg_row_offsets.begin(), cache.agg_row_offsets.end() - 1);
  for (index_t i = 0; i < A.n_rows; ++i)  // ascending i keeps groups sorted
    cache.rows_by_coarse[cursor[agg.assignment[i]]++] = i;
  return cache;
}

SparseMatrix apply_galerkin_cache(const GalerkinCache& cache, const SparseMatrix& A,
                                  const SparseMatrix& P) {
  require(P.n_rows == cache.n_fine && P.n_cols == cache.n_coarse,
          "galerkin cache: prolongator shape changed; rebuild the cache");
  require(fingerprint(A, cache.assignment) == cache.pattern_hash,
          "galerkin cache: fine matrix pattern changed; rebuild the cache");

  // Per-fine-node prolongator weight. Rows are empty (weight zero) exactly
  // where the near-null-space vector vanished.
  std::vector<double> pv(cache.n_fine, 0.0);
  for (index_t i = 0; i < cache.n_fine; ++i) {
    const index_t width = P.row_offsets[i + 1] - P.row_offsets[i];
    if (width > 1)
      throw Error("galerkin cache: prolongator row " + std::to_string(i) +
                  " has more than one entry");
    if (width == 1) {
      if (P.col_indices[P.row_offsets[i]] != cache.assignment[i])
        throw Error("galerkin cache: prolongator disagrees with the cached aggregation");
      pv[i] = P.values[P.row_offsets[i]];
    }
  }

  SparseMatrix Ac(cache.n_coarse, cache.n_coarse);
  Ac.row_offsets = cache.coarse_row_offsets;
  Ac.col_indices = cache.coarse_col_indices;
  Ac.values.assign(Ac.col_indices.size(), 0.0);
  // Every fine row scatters only into slots of its own coarse row, so
  // parallelizing over coarse rows is race free, and walking the rows of
  // a group in ascending order reproduces the stable-sorted reduction
  // order bit for bit no matter the thread count.
  parallel_for(cache.n_coarse, [&](index_t c) {
    for (index_t idx = cache.agg_row_offsets[c]; idx < cache.agg_row_offsets[c + 1]; ++idx) {
      const index_t i = cache.rows_by_coarse[idx];
      const double wi = pv[i];
      for (index_t e = A.row_offsets[i]; e < A.row_offsets[i + 1]; ++e)
        Ac.values[cache.slot_of_csr[e]] += wi * A.values[e] * pv[A.col_indices[e]];
    }
  });
  return Ac;
}

}  // namespace aggmg
