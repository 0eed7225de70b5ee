// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AGGMG_TYPES_HPP
#define AGGMG_TYPES_HPP

#include <cstdint>
#include <vector>

namespace aggmg {

using index_t = std::int64_t;

/// Dense vector of reals. All solver quantities (b, x, r, near null space
/// vectors) are plain contiguous arrays.
using Vector = std::vector<double>;

inline constexpr const char* version() { return "0.1.0"; }

}  // namespace aggmg

#endif
