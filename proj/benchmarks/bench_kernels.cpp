// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot kernels: sparse products, coarsening,
// the cached vs direct coarse-operator rebuild, and whole-cycle cost.
// Problem sizes are square grid sides.

#include <benchmark/benchmark.h>

#include "aggmg/aggregation.hpp"
#include "aggmg/cycles.hpp"
#include "aggmg/galerkin.hpp"
#include "aggmg/hierarchy.hpp"
#include "aggmg/poisson.hpp"
#include "aggmg/sparse.hpp"
#include "aggmg/strength.hpp"
#include "aggmg/transfer.hpp"

namespace {

using namespace aggmg;

SparseMatrix poisson(index_t s, double eps = 1.0) {
  PoissonSpec ps;
  ps.nx = s;
  ps.ny = s;
  ps.epsilon = eps;
  return generate_poisson(ps);
}

void BM_spmv(benchmark::State& state) {
  const index_t s = state.range(0);
  const SparseMatrix A = poisson(s);
  const Vector x = random_vector(A.n_rows, 1);
  Vector y(A.n_rows);
  for (auto _ : state) {
    spmv(A, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * A.nnz());
}
BENCHMARK(BM_spmv)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_spmm_rap(benchmark::State& state) {
  const index_t s = state.range(0);
  const SparseMatrix A = poisson(s, 0.01);
  const SparseMatrix C = classic_strength(A, 0.25);
  const SparseMatrix S = symmetrize_pattern(C);
  const Mis2Result mis = mis2(S, influence_counts(C), 42);
  const Aggregation agg = aggregate(S, A, mis);
  const TransferOperators t = build_transfer(agg, ones_vector(A.n_rows));
  for (auto _ : state) {
    SparseMatrix Ac = galerkin_direct(t.R, A, t.P);
    benchmark::DoNotOptimize(Ac.values.data());
  }
}
BENCHMARK(BM_spmm_rap)->Arg(128)->Arg(256)->Arg(512);

void BM_galerkin_cached(benchmark::State& state) {
  const index_t s = state.range(0);
  const SparseMatrix A = poisson(s, 0.01);
  const SparseMatrix C = classic_strength(A, 0.25);
  const SparseMatrix S = symmetrize_pattern(C);
  const Mis2Result mis = mis2(S, influence_counts(C), 42);
  const Aggregation agg = aggregate(S, A, mis);
  const TransferOperators t = build_transfer(agg, ones_vector(A.n_rows));
  const GalerkinCache cache = build_galerkin_cache(A, agg);
  for (auto _ : state) {
    SparseMatrix Ac = apply_galerkin_cache(cache, A, t.P);
    benchmark::DoNotOptimize(Ac.values.data());
  }
}
BENCHMARK(BM_galerkin_cached)->Arg(128)->Arg(256)->Arg(512);

void BM_strength_and_mis(benchmark::State& state) {
  const index_t s = state.range(0);
  const SparseMatrix A = poisson(s, 0.01);
  for (auto _ : state) {
    const SparseMatrix C = classic_strength(A, 0.25);
    const SparseMatrix S = symmetrize_pattern(C);
    Mis2Result mis = mis2(S, influence_counts(C), 42);
    benchmark::DoNotOptimize(mis.roots.data());
  }
}
BENCHMARK(BM_strength_and_mis)->Arg(128)->Arg(256);

void BM_setup_hierarchy(benchmark::State& state) {
  const index_t s = state.range(0);
  const SparseMatrix A = poisson(s, 0.01);
  for (auto _ : state) {
    Hierarchy h = setup_hierarchy(A, ones_vector(A.n_rows), SetupConfig{});
    benchmark::DoNotOptimize(h.levels.data());
  }
}
BENCHMARK(BM_setup_hierarchy)->Arg(128)->Arg(256);

void BM_refresh_values(benchmark::State& state) {
  const index_t s = state.range(0);
  const SparseMatrix A = poisson(s, 0.01);
  SetupConfig cfg;
  cfg.reuse_caches = true;
  Hierarchy h = setup_hierarchy(A, ones_vector(A.n_rows), cfg);
  const std::vector<double> values = h.levels[0].A.values;
  for (auto _ : state) {
    h = refresh_values(std::move(h), values);
    benchmark::DoNotOptimize(h.levels.data());
  }
}
BENCHMARK(BM_refresh_values)->Arg(128)->Arg(256)->Arg(512);

void BM_cycle(benchmark::State& state) {
  const index_t s = state.range(0);
  const bool accelerated = state.range(1) != 0;
  const SparseMatrix A = poisson(s, 0.01);
  const Hierarchy h = setup_hierarchy(A, ones_vector(A.n_rows), SetupConfig{});
  CycleConfig cc;
  cc.kind = accelerated ? CycleKind::hybrid : CycleKind::v;
  const Vector b = random_vector(A.n_rows, 2);
  for (auto _ : state) {
    Vector z = apply_preconditioner(h, cc, b);
    benchmark::DoNotOptimize(z.data());
  }
}
BENCHMARK(BM_cycle)->Args({128, 0})->Args({128, 1})->Args({256, 0})->Args({256, 1});

}  // namespace

BENCHMARK_MAIN();
