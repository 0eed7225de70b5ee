// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

/// Outcome of the distance-2 independent set selection. state[i] is +1 for
/// a root and -1 for a non-root; roots lists the root nodes ascending.
struct Mis2Result {
  std::vector<std::int8_t> state;
  std::vector<index_t> roots;
  int sweeps = 0;
};

/// Bulk-synchronous distance-2 maximal independent set on the symmetrized
/// strength graph S. Each sweep propagates per-node priority tuples
/// (state, influence + jitter, index) twice through the neighborhoods,
/// then fixes undecided maxima as roots and undecided nodes that saw a
/// root as non-roots. Deterministic for a fixed seed regardless of thread
/// count. influence is the directed strength column count per node.
Mis2Result mis2(const SparseMatrix& S, const std::vector<index_t>& influence,
                std::uint64_t seed);

/// Fine-to-coarse assignment produced from a root set.
struct Aggregation {
  index_t n_fine = 0;
  index_t n_aggregates = 0;
  std::vector<index_t> assignment;      // fine node -> aggregate index
  std::vector<index_t> representatives;  // aggregate index -> its root node
};

/// Two-pass aggregation around the roots. Pass 1 joins nodes adjacent to a
/// root; pass 2 joins the rest to a neighbor aggregated in pass 1, taking
/// the heaviest connection by |A| on the strength edge and breaking ties
/// toward the lowest aggregate index. Aggregate indices are ordered by
/// root node index. Any node left over (not reachable within two hops of
/// a root, which a maximal root set rules out) becomes a singleton.
Aggregation aggregate(const SparseMatrix& S, const SparseMatrix& A, const Mis2Result& mis);

}  // namespace aggmg
