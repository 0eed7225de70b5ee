// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

/// What to do when a row's diagonal entry is zero or missing: treat its
/// sign as positive, or refuse the matrix.
enum class ZeroDiagPolicy { positive, fail };

/// Classic strength of connection. Row i keeps the off-diagonal entries j
/// whose signed magnitude -sign(A_ii) * A_ij strictly exceeds alpha times
/// the row's largest such positive magnitude. The diagonal never
/// qualifies; a row with no positive magnitude comes out empty. Returned
/// pattern stores 1.0 per kept entry.
SparseMatrix classic_strength(const SparseMatrix& A, double alpha,
                              ZeroDiagPolicy policy = ZeroDiagPolicy::positive);

/// Number of rows in which each node appears as a strong connection, i.e.
/// column counts of C. Drives the aggregation tuple priority.
std::vector<index_t> influence_counts(const SparseMatrix& C);

/// Pattern of C union C^T with unit values. Strength is directed; the
/// independent-set rounds walk the symmetrized neighborhoods.
SparseMatrix symmetrize_pattern(const SparseMatrix& C);

}  // namespace aggmg
