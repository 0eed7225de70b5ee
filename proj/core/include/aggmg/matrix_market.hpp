// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "aggmg/sparse.hpp"
#include "aggmg/types.hpp"

namespace aggmg {

/// Matrix Market I/O. Reads coordinate and array banners with real or
/// integer fields; symmetric storage is expanded to general on read.
/// Pattern matrices are rejected unless allow_pattern is set, in which
/// case every stored entry gets value 1.0. Parse failures throw Error
/// with a 1-based line number.
struct MmOptions {
  bool allow_pattern = false;
};

SparseMatrix read_matrix_market(std::istream& in, const MmOptions& opts = {});
SparseMatrix read_matrix_market_file(const std::string& path, const MmOptions& opts = {});

Vector read_vector_market(std::istream& in);
Vector read_vector_market_file(const std::string& path);

/// Writers emit 17 significant digits so a read of the written file
/// reproduces every double bit-exactly.
void write_matrix_market(std::ostream& out, const SparseMatrix& A);
void write_matrix_market_file(const std::string& path, const SparseMatrix& A);

void write_vector_market(std::ostream& out, const Vector& x);
void write_vector_market_file(const std::string& path, const Vector& x);

}  // namespace aggmg
