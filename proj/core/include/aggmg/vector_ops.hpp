// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AGGMG_VECTOR_OPS_HPP
#define AGGMG_VECTOR_OPS_HPP

#include <cmath>
#include <span>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

// Reductions are summed over fixed-size chunks, partials combined in chunk
// order, so results are bit-identical for any thread count.
inline constexpr index_t kReductionChunk = 8192;

inline double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: length mismatch");
  const index_t n = static_cast<index_t>(a.size());
  const index_t nchunks = (n + kReductionChunk - 1) / kReductionChunk;
  if (nchunks <= 1) {
    double s = 0.0;
    for (index_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  std::vector<double> partial(nchunks, 0.0);
  parallel_for(nchunks, [&](index_t c) {
    const index_t lo = c * kReductionChunk;
    const index_t hi = std::min(n, lo + kReductionChunk);
    double s = 0.0;
    for (index_t i = lo; i < hi; ++i) s += a[i] * b[i];
    partial[c] = s;
  });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// y = a*x + y
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  require(x.size() == y.size(), "axpy: length mismatch");
  parallel_for(static_cast<index_t>(x.size()), [&](index_t i) { y[i] += a * x[i]; });
}

inline void scale(double a, std::span<double> x) {
  parallel_for(static_cast<index_t>(x.size()), [&](index_t i) { x[i] *= a; });
}

}  // namespace aggmg

#endif
