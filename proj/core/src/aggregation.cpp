// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/aggregation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"
#include "aggmg/rng.hpp"

namespace aggmg {

namespace {

struct Tuple {
  std::int8_t s;
  double v;
  index_t i;

  bool operator<(const Tuple& o) const {
    if (s != o.s) return s < o.s;
    if (v != o.v) return v < o.v;
    return i < o.i;
  }
};

void propagate_max(const SparseMatrix& S, const std::vector<Tuple>& in,
                   std::vector<Tuple>& out) {
  parallel_for(S.n_rows, [&](index_t i) {
    Tuple best = in[i];
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      const Tuple& t = in[S.col_indices[k]];
      if (best < t) best = t;
    }
    out[i] = best;
  });
}

}  // namespace

Mis2Result mis2(const SparseMatrix& S, const std::vector<index_t>& influence,
                std::uint64_t seed) {
  require(S.n_rows == S.n_cols, "mis2: graph must be square");
  require(static_cast<index_t>(influence.size()) == S.n_rows,
          "mis2: influence length mismatch");
  const index_t n = S.n_rows;
  Mis2Result res;
  res.state.assign(n, 0);

  std::vector<Tuple> cur(n), mid(n), far(n);
  parallel_for(n, [&](index_t i) {
    cur[i] = Tuple{0, static_cast<double>(influence[i]) +
                          uniform_open01(seed, static_cast<std::uint64_t>(i)),
                   i};
  });

  index_t undecided = n;
  while (undecided > 0) {
    require(res.sweeps <= n, "mis2: failed to decide all nodes");
    propagate_max(S, cur, mid);
    propagate_max(S, mid, far);
    std::atomic<index_t> decided{0};
    parallel_for(n, [&](index_t i) {
      if (res.state[i] != 0) return;
      const Tuple& t = far[i];
      if (t.i == i) {
        res.state[i] = 1;
        decided.fetch_add(1, std::memory_order_relaxed);
      } else if (t.s == 1) {
        res.state[i] = -1;
        decided.fetch_add(1, std::memory_order_relaxed);
      }
    });
    // Decided nodes broadcast their new state in later sweeps.
    parallel_for(n, [&](index_t i) { cur[i].s = res.state[i]; });
    undecided -= decided.load();
    ++res.sweeps;
  }
  for (index_t i = 0; i < n; ++i)
    if (res.state[i] == 1) res.roots.push_back(i);
  return res;
}

Aggregation aggregate(const SparseMatrix& S, const SparseMatrix& A, const Mis2Result& mis) {
  require(S.n_rows == S.n_cols && A.n_rows == A.n_cols && S.n_rows == A.n_rows,
          "aggregate: graph and matrix shapes disagree");
  const index_t n = S.n_rows;
  require(static_cast<index_t>(mis.state.size()) == n, "aggregate: state length mismatch");

  Aggregation agg;
  agg.n_fine = n;
  agg.assignment.assign(n, -1);

  // Roots seed their aggregates; root order fixes the aggregate order.
  std::vector<index_t> reps = mis.roots;
  for (index_t a = 0; a < static_cast<index_t>(reps.size()); ++a)
    agg.assignment[reps[a]] = a;

  // Pass 1: nodes adjacent to a root join it. Distance-2 independence
  // leaves at most one root neighbor; take the first defensively.
  parallel_for(n, [&](index_t i) {
    if (mis.state[i] == 1) return;
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      const index_t j = S.col_indices[k];
      if (mis.state[j] == 1) {
        agg.assignment[i] = agg.assignment[j];
        return;
      }
    }
  });

  // Pass 2: remaining nodes join a neighbor aggregated in pass 1, decided
  // against the pass-1 snapshot so the result is order-independent.
  std::vector<index_t> pass2(n, -1);
  parallel_for(n, [&](index_t i) {
    if (agg.assignment[i] != -1) return;
    index_t best_agg = -1;
    double best_w = -1.0;
    for (index_t k = S.row_offsets[i]; k < S.row_offsets[i + 1]; ++k) {
      const index_t j = S.col_indices[k];
      const index_t ja = agg.assignment[j];
      if (ja == -1) continue;
      const double w = std::max(std::abs(A.at(i, j)), std::abs(A.at(j, i)));
      if (w > best_w || (w == best_w && ja < best_agg)) {
        best_w = w;
        best_agg = ja;
      }
    }
    pass2[i] = best_agg;
  });
  for (index_t i = 0; i < n; ++i)
    if (agg.assignment[i] == -1 && pass2[i] != -1) agg.assignment[i] = pass2[i];

  // Anything still loose becomes its own aggregate.
  for (index_t i = 0; i < n; ++i) {
    if (agg.assignment[i] == -1) {
      agg.assignment[i] = static_cast<index_t>(reps.size());
      reps.push_back(i);
    }
  }

  // Renumber so aggregate indices follow representative node order.
  std::vector<index_t> order(reps.size());
  std::iota(order.begin(), order.end(), index_t{0});
  std::sort(order.begin(), order.end(),
            [&](index_t a, index_t b) { return reps[a] < reps[b]; });
  std::vector<index_t> rank(reps.size());
  for (index_t r = 0; r < static_cast<index_t>(order.size()); ++r) rank[order[r]] = r;
  agg.representatives.resize(reps.size());
  for (index_t a = 0; a < static_cast<index_t>(reps.size()); ++a)
    agg.representatives[rank[a]] = reps[a];
  parallel_for(n, [&](index_t i) { agg.assignment[i] = rank[agg.assignment[i]]; });
  agg.n_aggregates = static_cast<index_t>(reps.size());
  return agg;
}

}  // namespace aggmg
