// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

enum class SmootherKind { jacobi, damped_jacobi, sgs };

/// Immutable per-level smoother data. For damped Jacobi, omega is
/// (4/3) / rho_est with rho_est the Arnoldi estimate of the largest
/// eigenvalue magnitude of D^{-1} A.
struct SmootherState {
  SmootherKind kind = SmootherKind::damped_jacobi;
  Vector inv_diag;
  double omega = 1.0;
  double rho_est = 1.0;
  int arnoldi_m = 5;
};

/// Builds the smoother. damped_jacobi runs at most arnoldi_m (<= 5)
/// Arnoldi steps on D^{-1} A from a seeded random start and takes the
/// largest-magnitude eigenvalue of the small Hessenberg matrix; an early
/// invariant subspace just truncates the Hessenberg. A zero diagonal
/// entry is an error naming the row.
SmootherState setup_smoother(const SparseMatrix& A, SmootherKind kind,
                             int arnoldi_m = 5, std::uint64_t seed = 0);

/// One sweep in place. jacobi: x += D^{-1}(b - Ax). damped_jacobi the
/// same scaled by omega. sgs: one forward then one backward Gauss-Seidel
/// pass, sequentially.
void smooth(const SmootherState& s, const SparseMatrix& A, const Vector& b, Vector& x);

}  // namespace aggmg
