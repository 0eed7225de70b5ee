// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AGGMG_ERROR_HPP
#define AGGMG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace aggmg {

/// All recoverable failures (bad dimensions, parse errors, singular
/// matrices, ...) surface as this exception type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

// Literal-message overload: keeps require() free of string construction on
// the success path, which matters inside per-row validation loops.
inline void require(bool cond, const char* msg) {
  if (!cond) throw Error(msg);
}

}  // namespace aggmg

#endif
