// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aggmg/dense.hpp"
#include "aggmg/galerkin.hpp"
#include "aggmg/smoother.hpp"
#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

/// One grid in the hierarchy. The coarsest level has empty P and R and an
/// unused smoother; every finer level interpolates from the level below.
struct Level {
  SparseMatrix A;
  SparseMatrix P;  // n_k x n_{k+1}
  SparseMatrix R;  // n_{k+1} x n_k
  Vector B;        // near-null-space vector on this level
  SmootherState smoother;
  std::optional<GalerkinCache> galerkin_cache;
};

struct SetupConfig {
  double alpha = 0.25;
  index_t coarse_size_max = 600;
  int max_levels = 25;
  SmootherKind smoother = SmootherKind::damped_jacobi;
  int arnoldi_m = 5;
  std::uint64_t seed = 42;
  bool reuse_caches = false;
};

struct Hierarchy {
  std::vector<Level> levels;  // 0 = finest
  LuFactors coarse_factorization;
  SetupConfig config;
  std::vector<std::string> warnings;

  index_t n_levels() const { return static_cast<index_t>(levels.size()); }
  index_t coarsest() const { return n_levels() - 1; }
};

/// Builds levels by strength -> independent set -> aggregation ->
/// transfer -> coarse operator until the coarse grid is at most
/// coarse_size_max unknowns, max_levels is hit, or coarsening shrinks the
/// grid by less than 5% (recorded as a warning). The coarsest operator is
/// densified and LU-factorized. With reuse_caches set, coarse values are
/// produced through the cached segmented reduction so a later refresh
/// with identical values reproduces them bit-for-bit.
Hierarchy setup_hierarchy(SparseMatrix A0, Vector B0, const SetupConfig& config);

/// Re-runs the numeric half of setup on new level-0 values: coarse
/// operators through the stored caches, smoothers, and the coarse
/// factorization. Aggregations and transfer operators are untouched.
/// Requires a hierarchy built with reuse_caches; the value array must
/// match the level-0 pattern.
Hierarchy refresh_values(Hierarchy h, const std::vector<double>& new_values);

struct LevelStats {
  index_t n = 0;
  index_t nnz = 0;
  double nnz_per_row = 0.0;
};

struct HierarchyReport {
  std::vector<LevelStats> levels;
  double grid_complexity = 0.0;      // sum n_k / n_0
  double operator_complexity = 0.0;  // sum nnz_k / nnz_0
};

HierarchyReport hierarchy_report(const Hierarchy& h);

/// Aligned human-readable table.
std::string format_table(const HierarchyReport& r);
/// One "level n nnz nnz_per_row" record per line, plus complexity lines.
std::string format_records(const HierarchyReport& r);

}  // namespace aggmg
