// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>

#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

enum class SolverMethod { fgmres, pcg };

struct SolverConfig {
  SolverMethod method = SolverMethod::fgmres;
  double tol = 1e-6;       // relative to the right-hand side norm
  int max_iters = 200;
  int restart = 30;        // fgmres only
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  // [0] is the initial true residual
  double setup_seconds = 0.0;            // filled by the caller
  double solve_seconds = 0.0;
  std::string note;  // stagnation and similar non-fatal observations
};

struct SolveResult {
  Vector x;
  SolveReport report;
};

/// z = M(r). An empty function is the identity preconditioner.
using Preconditioner = std::function<Vector(const Vector&)>;

/// Right-preconditioned flexible GMRES with restart. History holds one
/// entry per iteration (rotation-based estimates), overwritten by the
/// recomputed true residual at each restart boundary and at exit.
SolveResult fgmres(const SparseMatrix& A, const Vector& b, const Vector& x0,
                   const Preconditioner& M, const SolverConfig& cfg);

/// Preconditioned conjugate gradients with the flexible direction update,
/// tolerating a mildly varying preconditioner. Requires positive
/// curvature; a non-positive p^T A p aborts with advice to use fgmres.
SolveResult pcg(const SparseMatrix& A, const Vector& b, const Vector& x0,
                const Preconditioner& M, const SolverConfig& cfg);

}  // namespace aggmg
