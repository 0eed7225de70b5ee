// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aggmg/aggregation.hpp"
#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

/// Prolongator and restriction for one coarsening step, plus the coarse
/// image of the near-null-space vector.
struct TransferOperators {
  SparseMatrix P;   // n_fine x n_agg, one entry per row
  SparseMatrix R;   // P transposed
  Vector coarse_b;  // per-aggregate two-norm of the fine vector
};

/// Piecewise interpolation over the aggregates carrying the near-null-space
/// vector fine_b: column J of P is fine_b restricted to aggregate J,
/// scaled to unit two-norm, so P^T P = I and P * coarse_b reproduces
/// fine_b. An aggregate on which fine_b vanishes identically is an error.
TransferOperators build_transfer(const Aggregation& agg, const Vector& fine_b);

}  // namespace aggmg
