// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AGGMG_PARALLEL_HPP
#define AGGMG_PARALLEL_HPP

#include <algorithm>
#include <atomic>

#include "aggmg/types.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aggmg {

namespace detail {
inline std::atomic<int>& thread_cap() {
  static std::atomic<int> cap{0};
  return cap;
}
}  // namespace detail

/// Caps internal parallelism. 0 restores the runtime default. Results are
/// identical for every cap value; only wall time changes.
inline void set_num_threads(int n) { detail::thread_cap().store(n < 0 ? 0 : n); }

inline int num_threads() {
#ifdef _OPENMP
  int cap = detail::thread_cap().load();
  return cap > 0 ? cap : omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs f(i) for i in [0, n). Each index must write only its own outputs;
/// under that contract the result is independent of the thread count.
template <class F>
void parallel_for(index_t n, F&& f) {
#ifdef _OPENMP
  const int nt = num_threads();
  if (nt > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(nt)
    for (index_t i = 0; i < n; ++i) f(i);
    return;
  }
#endif
  for (index_t i = 0; i < n; ++i) f(i);
}

/// Runs f(thread_id, begin, end) over a static partition of [0, n) into
/// contiguous ranges, one per worker.
template <class F>
void parallel_ranges(index_t n, F&& f) {
  int nt = num_threads();
  if (nt < 1) nt = 1;
#ifdef _OPENMP
  if (nt > 1 && n > 1) {
#pragma omp parallel num_threads(nt)
    {
      const int tid = omp_get_thread_num();
      const int workers = omp_get_num_threads();
      const index_t chunk = (n + workers - 1) / workers;
      const index_t lo = std::min<index_t>(n, chunk * tid);
      const index_t hi = std::min<index_t>(n, lo + chunk);
      if (lo < hi) f(tid, lo, hi);
    }
    return;
  }
#endif
  if (n > 0) f(0, index_t{0}, n);
}

}  // namespace aggmg

#endif
