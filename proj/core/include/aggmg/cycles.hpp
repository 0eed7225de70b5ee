// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aggmg/hierarchy.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

enum class CycleKind { v, k, hybrid };
enum class InnerKind { cg, gmres };

/// hybrid runs Krylov-accelerated cycles on the top k_levels levels and
/// plain V-cycles below; t is the inner residual threshold deciding
/// whether one inner step suffices.
struct CycleConfig {
  CycleKind kind = CycleKind::hybrid;
  int k_levels = 2;
  double t = 0.25;
  InnerKind inner = InnerKind::gmres;
};

/// One V-cycle from level k: pre-smooth, restrict the residual, recurse
/// with a zero guess (exact solve on the coarsest level), prolongate the
/// correction, post-smooth. Called on the coarsest level it reduces to
/// the exact solve.
void vcycle(const Hierarchy& h, index_t k, const Vector& b, Vector& x);

/// One Krylov-accelerated cycle from level k. The coarse correction is
/// built from one inner cycle application (two when the inner residual
/// stays above t times the restricted residual), combined with the
/// minimizing scalars for the chosen inner method. Recursion below level
/// k follows cfg: accelerated while the level index is under k_levels in
/// hybrid mode, always in pure mode. A zero curvature or Gram scalar
/// falls back to the unscaled correction with a warning on stderr.
void kcycle(const Hierarchy& h, const CycleConfig& cfg, index_t k, const Vector& b,
            Vector& x);

/// z = one cycle applied to r from a zero guess; the preconditioner the
/// outer Krylov solvers call.
Vector apply_preconditioner(const Hierarchy& h, const CycleConfig& cfg, const Vector& r);

}  // namespace aggmg
