// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/hierarchy.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include "aggmg/aggregation.hpp"
#include "aggmg/error.hpp"
#include "aggmg/rng.hpp"
#include "aggmg/strength.hpp"
#include "aggmg/transfer.hpp"
#include "aggmg/vector_ops.hpp"

namespace aggmg {

namespace {

// Dense factorization of a stalled level is refused beyond this size.
constexpr index_t kDenseSolveCap = 5000;

std::uint64_t level_seed(std::uint64_t seed, index_t level, std::uint64_t tag) {
  return hash_mix(hash_mix(seed ^ tag) ^ static_cast<std::uint64_t>(level));
}

constexpr std::uint64_t kMisTag = 0x6d697332;       // independent-set draws
constexpr std::uint64_t kSmootherTag = 0x736d6f6f;  // Arnoldi start vectors

}  // namespace

Hierarchy setup_hierarchy(SparseMatrix A0, Vector B0, const SetupConfig& config) {
  A0.validate();
  require(A0.n_rows == A0.n_cols, "setup: matrix must be square");
  require(static_cast<index_t>(B0.size()) == A0.n_rows,
          "setup: near-null-space vector length mismatch");
  require(norm2(B0) > 0.0, "setup: near-null-space vector is zero");
  require(config.coarse_size_max >= 1, "setup: coarse_size_max must be at least 1");
  require(config.max_levels >= 1, "setup: max_levels must be at least 1");

  Hierarchy h;
  h.config = config;
  h.levels.push_back(Level{std::move(A0), {}, {}, std::move(B0), {}, {}});

  while (h.levels.back().A.n_rows > config.coarse_size_max &&
         static_cast<int>(h.levels.size()) < config.max_levels) {
    const index_t k = h.coarsest();
    Level& fine = h.levels[k];
    const index_t n = fine.A.n_rows;

    const SparseMatrix C = classic_strength(fine.A, config.alpha);
    const std::vector<index_t> influence = influence_counts(C);
    const SparseMatrix S = symmetrize_pattern(C);
    const Mis2Result mis = mis2(S, influence, level_seed(config.seed, k, kMisTag));
    const Aggregation agg = aggregate(S, fine.A, mis);

    if (static_cast<double>(agg.n_aggregates) >= 0.95 * static_cast<double>(n)) {
      std::ostringstream msg;
      msg << "coarsening stalled at level " << k << " (" << n << " -> "
          << agg.n_aggregates << " aggregates); solving this level directly";
      h.warnings.push_back(msg.str());
      break;
    }

    TransferOperators t = build_transfer(agg, fine.B);
    SparseMatrix Ac;
    if (config.reuse_caches) {
      fine.galerkin_cache = build_galerkin_cache(fine.A, agg);
      Ac = apply_galerkin_cache(*fine.galerkin_cache, fine.A, t.P);
    } else {
      Ac = galerkin_direct(t.R, fine.A, t.P);
    }
    fine.smoother = setup_smoother(fine.A, config.smoother, config.arnoldi_m,
                                   level_seed(config.seed, k, kSmootherTag));
    fine.P = std::move(t.P);
    fine.R = std::move(t.R);
    h.levels.push_back(Level{std::move(Ac), {}, {}, std::move(t.coarse_b), {}, {}});
  }

  const index_t nL = h.levels.back().A.n_rows;
  require(nL <= std::max(config.coarse_size_max, kDenseSolveCap),
          "setup: coarsest level has " + std::to_string(nL) +
              " unknowns, too large for a dense solve");
  h.coarse_factorization = lu_factor(to_dense(h.levels.back().A));
  return h;
}

Hierarchy refresh_values(Hierarchy h, const std::vector<double>& new_values) {
  require(h.config.reuse_caches, "refresh: hierarchy was built without caches");
  require(new_values.size() == h.levels[0].A.values.size(),
          "refresh: value count does not match the level-0 pattern");
  h.levels[0].A.values = new_values;
  for (index_t k = 0; k + 1 < h.n_levels(); ++k) {
    Level& fine = h.levels[k];
    require(fine.galerkin_cache.has_value(), "refresh: missing cache at level");
    h.levels[k + 1].A = apply_galerkin_cache(*fine.galerkin_cache, fine.A, fine.P);
    fine.smoother = setup_smoother(fine.A, h.config.smoother, h.config.arnoldi_m,
                                   level_seed(h.config.seed, k, kSmootherTag));
  }
  h.coarse_factorization = lu_factor(to_dense(h.levels.back().A));
  return h;
}

HierarchyReport hierarchy_report(const Hierarchy& h) {
  HierarchyReport r;
  double sum_n = 0.0, sum_nnz = 0.0;
  for (const Level& lvl : h.levels) {
    LevelStats s;
    s.n = lvl.A.n_rows;
    s.nnz = lvl.A.nnz();
    s.nnz_per_row = s.n > 0 ? static_cast<double>(s.nnz) / static_cast<double>(s.n) : 0.0;
    sum_n += static_cast<double>(s.n);
    sum_nnz += static_cast<double>(s.nnz);
    r.levels.push_back(s);
  }
  r.grid_complexity = sum_n / static_cast<double>(r.levels.front().n);
  r.operator_complexity = sum_nnz / static_cast<double>(r.levels.front().nnz);
  return r;
}

std::string format_table(const HierarchyReport& r) {
  std::ostringstream out;
  out << "level       unknowns            nnz   nnz/row\n";
  for (size_t k = 0; k < r.levels.size(); ++k) {
    const LevelStats& s = r.levels[k];
    out << std::setw(5) << k << std::setw(15) << s.n << std::setw(15) << s.nnz
        << std::setw(10) << std::fixed << std::setprecision(2) << s.nnz_per_row << "\n";
  }
  out << "grid complexity     " << std::setprecision(4) << r.grid_complexity << "\n";
  out << "operator complexity " << std::setprecision(4) << r.operator_complexity << "\n";
  return out.str();
}

std::string format_records(const HierarchyReport& r) {
  std::ostringstream out;
  for (size_t k = 0; k < r.levels.size(); ++k) {
    const LevelStats& s = r.levels[k];
    out << "level " << k << " " << s.n << " " << s.nnz << " " << std::setprecision(17)
        << s.nnz_per_row << "\n";
  }
  out << "grid_complexity " << std::setprecision(17) << r.grid_complexity << "\n";
  out << "operator_complexity " << std::setprecision(17) << r.operator_complexity << "\n";
  return out.str();
}

}  // namespace aggmg
