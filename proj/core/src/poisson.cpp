// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/poisson.hpp"

#include <limits>
#include <string>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"
#include "aggmg/rng.hpp"

namespace aggmg {

SparseMatrix generate_poisson(const PoissonSpec& spec) {
  require(spec.dims == 2 || spec.dims == 3, "poisson: dims must be 2 or 3");
  const index_t nx = spec.nx;
  const index_t ny = spec.ny;
  const index_t nz = (spec.dims == 3) ? spec.nz : 1;
  require(nx >= 1 && ny >= 1 && nz >= 1, "poisson: grid extents must be positive");
  require(spec.epsilon > 0.0, "poisson: epsilon must be positive");
  int weak = spec.weak_axis;
  if (weak < 0) weak = (spec.dims == 2) ? 1 : 2;
  require(weak < spec.dims, "poisson: weak axis " + std::to_string(weak) +
                                " out of range for " + std::to_string(spec.dims) + "D");

  constexpr index_t kMax = std::numeric_limits<index_t>::max() / 8;
  require(nx <= kMax / (ny > 0 ? ny : 1) && nx * ny <= kMax / nz,
          "poisson: grid size overflows the index type");
  const index_t n = nx * ny * nz;

  const double cx = (weak == 0) ? -spec.epsilon : -1.0;
  const double cy = (weak == 1) ? -spec.epsilon : -1.0;
  const double cz = (weak == 2) ? -spec.epsilon : -1.0;
  const double diag = -2.0 * (cx + cy + (spec.dims == 3 ? cz : 0.0));

  SparseMatrix A(n, n);
  std::vector<index_t> row_nnz(n);
  parallel_for(n, [&](index_t r) {
    const index_t i = r % nx;
    const index_t j = (r / nx) % ny;
    const index_t k = r / (nx * ny);
    index_t count = 1;
    if (i > 0) ++count;
    if (i + 1 < nx) ++count;
    if (j > 0) ++count;
    if (j + 1 < ny) ++count;
    if (k > 0) ++count;
    if (k + 1 < nz) ++count;
    row_nnz[r] = count;
  });
  A.row_offsets[0] = 0;
  for (index_t r = 0; r < n; ++r) A.row_offsets[r + 1] = A.row_offsets[r] + row_nnz[r];
  A.col_indices.resize(A.row_offsets[n]);
  A.values.resize(A.row_offsets[n]);

  // Lexicographic ordering (x fastest); neighbors emitted in ascending index.
  parallel_for(n, [&](index_t r) {
    const index_t i = r % nx;
    const index_t j = (r / nx) % ny;
    const index_t k = r / (nx * ny);
    index_t p = A.row_offsets[r];
    const auto put = [&](index_t col, double v) {
      A.col_indices[p] = col;
      A.values[p] = v;
      ++p;
    };
    if (k > 0) put(r - nx * ny, cz);
    if (j > 0) put(r - nx, cy);
    if (i > 0) put(r - 1, cx);
    put(r, diag);
    if (i + 1 < nx) put(r + 1, cx);
    if (j + 1 < ny) put(r + nx, cy);
    if (k + 1 < nz) put(r + nx * ny, cz);
  });
  return A;
}

Vector ones_vector(index_t n) { return Vector(n, 1.0); }

Vector random_vector(index_t n, std::uint64_t seed) {
  Vector x(n);
  parallel_for(n, [&](index_t i) {
    x[i] = uniform_sym(seed, static_cast<std::uint64_t>(i));
  });
  return x;
}

}  // namespace aggmg
