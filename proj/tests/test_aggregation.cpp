// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/aggregation.hpp"

#include <vector>

#include "doctest.h"

#include "aggmg/parallel.hpp"
#include "aggmg/strength.hpp"
#include "test_helpers.hpp"

using namespace aggmg;
namespace th = testing;

namespace {

/// Checks the three conditions a distance-2 independent root set plus
/// assignment must satisfy, by brute-force BFS on the symmetric pattern.
/// Returns a description of the first violation, empty when clean.
std::string check_mis2(const SparseMatrix& S, const Mis2Result& mis,
                       const Aggregation* agg) {
  const index_t n = S.n_rows;
  for (index_t i = 0; i < n; ++i)
    if (mis.state[i] == 0) return "node left undecided";

  // Independence: no two roots within distance 2.
  for (const index_t r : mis.roots) {
    const auto dist = th::bfs_distances(S, r, 2);
    for (const index_t q : mis.roots)
      if (q != r && dist[q] <= 2) return "roots within distance 2";
  }
  // Maximality: every non-root sees a root within distance 2.
  for (index_t i = 0; i < n; ++i) {
    if (mis.state[i] == 1) continue;
    const auto dist = th::bfs_distances(S, i, 2);
    bool near_root = false;
    for (const index_t r : mis.roots)
      if (dist[r] <= 2) near_root = true;
    if (!near_root) return "non-root with no root within distance 2";
  }
  // Coverage: every node lies within distance 2 of its aggregate's root.
  if (agg) {
    for (index_t i = 0; i < n; ++i) {
      const index_t root = agg->representatives[agg->assignment[i]];
      const auto dist = th::bfs_distances(S, i, 2);
      if (dist[root] > 2) return "node assigned to a root farther than 2";
    }
  }
  return {};
}

SparseMatrix path_graph(index_t n) {
  TripletList t(n, n);
  for (index_t i = 0; i + 1 < n; ++i) {
    t.add(i, i + 1, 1.0);
    t.add(i + 1, i, 1.0);
  }
  return triplets_to_csr(t);
}

}  // namespace

TEST_SUITE_BEGIN("aggregation");

TEST_CASE("every isolated node becomes a root and a singleton") {
  const SparseMatrix S(6, 6);
  const Mis2Result mis = mis2(S, std::vector<index_t>(6, 0), 1);
  CHECK(mis.roots.size() == 6);
  for (auto s : mis.state) CHECK(s == 1);

  const Aggregation agg = aggregate(S, S, mis);
  CHECK(agg.n_aggregates == 6);
  for (index_t i = 0; i < 6; ++i) CHECK(agg.assignment[i] == i);
}

TEST_CASE("path of three nodes roots the middle") {
  const SparseMatrix S = path_graph(3);
  // Influence (in-degree): node 1 sees two, the ends one each, so node 1
  // wins the tuple competition for any jitter in (0,1).
  const std::vector<index_t> influence{1, 2, 1};
  for (std::uint64_t seed : {1, 7, 1234}) {
    const Mis2Result mis = mis2(S, influence, seed);
    CHECK(mis.roots == std::vector<index_t>{1});
  }
}

TEST_CASE("star graph collapses into one aggregate") {
  const index_t n = 7;
  TripletList t(n, n);
  for (index_t i = 1; i < n; ++i) {
    t.add(0, i, 1.0);
    t.add(i, 0, 1.0);
  }
  const SparseMatrix S = triplets_to_csr(t);
  // The hub has the largest influence.
  std::vector<index_t> influence(n, 1);
  influence[0] = n - 1;
  const Mis2Result mis = mis2(S, influence, 3);
  REQUIRE(mis.roots == std::vector<index_t>{0});
  const Aggregation agg = aggregate(S, S, mis);
  CHECK(agg.n_aggregates == 1);
  for (index_t i = 0; i < n; ++i) CHECK(agg.assignment[i] == 0);
}

TEST_CASE("random graphs satisfy independence, maximality, coverage") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const index_t n = 20 + static_cast<index_t>((seed * 29) % 180);
    const double density = 0.01 + 0.08 * th::rng(seed)() * 0x1.0p-64;
    const SparseMatrix S = th::random_graph(n, density, 1000 + seed);
    const auto influence = influence_counts(S);
    const Mis2Result mis = mis2(S, influence, seed);
    const Aggregation agg = aggregate(S, S, mis);
    const std::string violation = check_mis2(S, mis, &agg);
    CHECK_MESSAGE(violation.empty(),
                  "seed ", seed, " n ", n, ": ", violation);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("aggregate structure invariants") {
  const SparseMatrix S = th::random_graph(120, 0.04, 77);
  const auto influence = influence_counts(S);
  const Mis2Result mis = mis2(S, influence, 5);
  const Aggregation agg = aggregate(S, S, mis);

  REQUIRE(agg.n_fine == 120);
  REQUIRE(static_cast<index_t>(agg.representatives.size()) == agg.n_aggregates);
  // Total map into contiguous indices.
  std::vector<int> seen(agg.n_aggregates, 0);
  for (index_t i = 0; i < 120; ++i) {
    REQUIRE(agg.assignment[i] >= 0);
    REQUIRE(agg.assignment[i] < agg.n_aggregates);
    seen[agg.assignment[i]] = 1;
  }
  for (int s : seen) CHECK(s == 1);
  // Exactly one root per aggregate, mapped to its own aggregate, ordered
  // by node index.
  CHECK(static_cast<index_t>(mis.roots.size()) <= agg.n_aggregates);
  for (index_t a = 0; a + 1 < agg.n_aggregates; ++a)
    CHECK(agg.representatives[a] < agg.representatives[a + 1]);
  for (index_t a = 0; a < agg.n_aggregates; ++a)
    CHECK(agg.assignment[agg.representatives[a]] == a);
}

TEST_CASE("results are deterministic across thread counts and repeats") {
  const SparseMatrix S = th::random_graph(150, 0.03, 88);
  const auto influence = influence_counts(S);

  set_num_threads(1);
  const Mis2Result m1 = mis2(S, influence, 9);
  const Aggregation a1 = aggregate(S, S, m1);
  set_num_threads(8);
  const Mis2Result m8 = mis2(S, influence, 9);
  const Aggregation a8 = aggregate(S, S, m8);
  set_num_threads(0);

  CHECK(m1.state == m8.state);
  CHECK(m1.roots == m8.roots);
  CHECK(a1.assignment == a8.assignment);
  CHECK(a1.representatives == a8.representatives);
}

TEST_CASE("different seeds may pick different roots") {
  // Sanity check that the jitter actually matters on a symmetric problem.
  const SparseMatrix S = path_graph(40);
  const auto influence = influence_counts(S);
  const Mis2Result a = mis2(S, influence, 1);
  const Mis2Result b = mis2(S, influence, 2);
  // Both are valid; they need not be equal. Just confirm validity here.
  CHECK(check_mis2(S, a, nullptr).empty());
  CHECK(check_mis2(S, b, nullptr).empty());
}

TEST_CASE("pass-2 ties break toward the heaviest connection") {
  // Path 0-1-2-3-4 with influences making 0 and 4 the roots; node 2 sits
  // between aggregates joined in pass 1 and must follow the heavier of
  // the A couplings to its two neighbors.
  const SparseMatrix S = path_graph(5);
  TripletList ta(5, 5);
  for (index_t i = 0; i < 5; ++i) ta.add(i, i, 2.0);
  ta.add(1, 2, -0.5);
  ta.add(2, 1, -0.5);
  ta.add(2, 3, -3.0);  // heavier: node 2 joins node 3's aggregate
  ta.add(3, 2, -3.0);
  ta.add(0, 1, -1.0);
  ta.add(1, 0, -1.0);
  ta.add(3, 4, -1.0);
  ta.add(4, 3, -1.0);
  const SparseMatrix A = triplets_to_csr(ta);

  Mis2Result mis;
  mis.state = {1, -1, -1, -1, 1};
  mis.roots = {0, 4};
  const Aggregation agg = aggregate(S, A, mis);
  CHECK(agg.assignment[0] == 0);
  CHECK(agg.assignment[1] == 0);
  CHECK(agg.assignment[3] == 1);
  CHECK(agg.assignment[4] == 1);
  CHECK(agg.assignment[2] == 1);  // pulled by the -3 coupling
}

TEST_CASE("coarsening ratio on 2d operators sits in the documented band") {
  // Strength with alpha=0.25 on the isotropic operator keeps all four
  // neighbors, and distance-2 roots thin the grid by a factor of a few.
  const SparseMatrix A = [&] {
    TripletList t(32 * 32, 32 * 32);
    for (index_t iy = 0; iy < 32; ++iy)
      for (index_t ix = 0; ix < 32; ++ix) {
        const index_t row = iy * 32 + ix;
        t.add(row, row, 4.0);
        if (ix > 0) t.add(row, row - 1, -1.0);
        if (ix < 31) t.add(row, row + 1, -1.0);
        if (iy > 0) t.add(row, row - 32, -1.0);
        if (iy < 31) t.add(row, row + 32, -1.0);
      }
    return triplets_to_csr(t);
  }();
  const SparseMatrix C = classic_strength(A, 0.25);
  const SparseMatrix S = symmetrize_pattern(C);
  const auto influence = influence_counts(C);
  const Mis2Result mis = mis2(S, influence, 42);
  const Aggregation agg = aggregate(S, A, mis);
  const double ratio = static_cast<double>(agg.n_fine) / agg.n_aggregates;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 10.0);
}

TEST_SUITE_END();
