// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

/// Finite-difference anisotropic Poisson problem on a regular grid with
/// Dirichlet boundaries eliminated; only interior unknowns are kept.
/// The weak axis carries coefficient epsilon, every other axis 1.
/// weak_axis: 0=x, 1=y, 2=z; -1 picks the default (y in 2D, z in 3D).
struct PoissonSpec {
  int dims = 2;
  index_t nx = 0;
  index_t ny = 0;
  index_t nz = 1;
  double epsilon = 1.0;
  int weak_axis = -1;
};

SparseMatrix generate_poisson(const PoissonSpec& spec);

Vector ones_vector(index_t n);
/// Entries drawn uniformly from (-1, 1), independent of thread count.
Vector random_vector(index_t n, std::uint64_t seed);

}  // namespace aggmg
