// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "aggmg/error.hpp"

namespace aggmg {

namespace {

[[noreturn]] void fail(index_t line, const std::string& msg) {
  throw Error("matrix market: line " + std::to_string(line) + ": " + msg);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct Banner {
  bool coordinate = false;
  bool pattern = false;
  bool integer = false;
  bool symmetric = false;
};

Banner parse_banner(const std::string& text, index_t line) {
  std::istringstream fields(text);
  std::string tag, object, format, field, symmetry;
  fields >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") fail(line, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") fail(line, "unsupported object '" + object + "'");
  Banner b;
  const std::string fmt = lower(format);
  if (fmt == "coordinate")
    b.coordinate = true;
  else if (fmt != "array")
    fail(line, "unsupported format '" + format + "'");
  const std::string fld = lower(field);
  if (fld == "pattern")
    b.pattern = true;
  else if (fld == "integer")
    b.integer = true;
  else if (fld != "real")
    fail(line, "unsupported field '" + field + "'");
  const std::string sym = lower(symmetry);
  if (sym == "symmetric")
    b.symmetric = true;
  else if (sym != "general")
    fail(line, "unsupported symmetry '" + symmetry + "'");
  if (!b.coordinate && b.pattern) fail(line, "array format cannot be pattern");
  return b;
}

// Reads the next content line, skipping comments and blanks.
bool next_line(std::istream& in, std::string& out, index_t& line) {
  while (std::getline(in, out)) {
    ++line;
    size_t p = 0;
    while (p < out.size() && std::isspace(static_cast<unsigned char>(out[p]))) ++p;
    if (p == out.size()) continue;
    if (out[p] == '%') continue;
    return true;
  }
  return false;
}

index_t parse_index(std::istringstream& fields, index_t line, const char* what) {
  long long v = 0;
  if (!(fields >> v)) fail(line, std::string("expected ") + what);
  return static_cast<index_t>(v);
}

double parse_value(std::istringstream& fields, index_t line) {
  double v = 0.0;
  if (!(fields >> v)) fail(line, "expected numeric value");
  return v;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in, const MmOptions& opts) {
  index_t line = 0;
  std::string text;
  require(static_cast<bool>(std::getline(in, text)), "matrix market: empty input");
  ++line;
  const Banner banner = parse_banner(text, line);
  if (banner.pattern && !opts.allow_pattern)
    fail(line, "pattern matrices need the pattern option enabled");

  if (!next_line(in, text, line)) fail(line + 1, "missing size line");
  std::istringstream size_fields(text);
  const index_t n_rows = parse_index(size_fields, line, "row count");
  const index_t n_cols = parse_index(size_fields, line, "column count");

  if (banner.coordinate) {
    const index_t n_stored = parse_index(size_fields, line, "entry count");
    if (n_rows < 0 || n_cols < 0 || n_stored < 0) fail(line, "negative size");
    TripletList t(n_rows, n_cols);
    for (index_t k = 0; k < n_stored; ++k) {
      if (!next_line(in, text, line)) fail(line + 1, "unexpected end of file");
      std::istringstream fields(text);
      const index_t i = parse_index(fields, line, "row index") - 1;
      const index_t j = parse_index(fields, line, "column index") - 1;
      const double v = banner.pattern ? 1.0 : parse_value(fields, line);
      if (i < 0 || i >= n_rows || j < 0 || j >= n_cols) fail(line, "index out of range");
      t.add(i, j, v);
      if (banner.symmetric) {
        if (j > i) fail(line, "symmetric entry above the diagonal");
        if (i != j) t.add(j, i, v);
      }
    }
    return triplets_to_csr(t);
  }

  // Array format: dense column-major listing.
  if (n_rows < 0 || n_cols < 0) fail(line, "negative size");
  TripletList t(n_rows, n_cols);
  const auto read_entry = [&](index_t i, index_t j) {
    if (!next_line(in, text, line)) fail(line + 1, "unexpected end of file");
    std::istringstream fields(text);
    const double v = parse_value(fields, line);
    if (v != 0.0) t.add(i, j, v);
    if (banner.symmetric && i != j && v != 0.0) t.add(j, i, v);
  };
  if (banner.symmetric) {
    for (index_t j = 0; j < n_cols; ++j)
      for (index_t i = j; i < n_rows; ++i) read_entry(i, j);
  } else {
    for (index_t j = 0; j < n_cols; ++j)
      for (index_t i = 0; i < n_rows; ++i) read_entry(i, j);
  }
  return triplets_to_csr(t);
}

SparseMatrix read_matrix_market_file(const std::string& path, const MmOptions& opts) {
  std::ifstream in(path);
  require(in.good(), "cannot open '" + path + "'");
  return read_matrix_market(in, opts);
}

Vector read_vector_market(std::istream& in) {
  const SparseMatrix M = read_matrix_market(in);
  require(M.n_rows > 0 && M.n_cols > 0, "matrix market: empty vector");
  require(M.n_cols == 1 || M.n_rows == 1,
          "vector file must have a single column or row, got " + std::to_string(M.n_rows) +
              "x" + std::to_string(M.n_cols));
  const index_t n = std::max(M.n_rows, M.n_cols);
  Vector x(n, 0.0);
  if (M.n_cols == 1) {
    for (index_t i = 0; i < M.n_rows; ++i)
      for (index_t k = M.row_offsets[i]; k < M.row_offsets[i + 1]; ++k) x[i] = M.values[k];
  } else {
    for (index_t k = 0; k < M.nnz(); ++k) x[M.col_indices[k]] = M.values[k];
  }
  return x;
}

Vector read_vector_market_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open '" + path + "'");
  return read_vector_market(in);
}

namespace {

void write_double(std::ostream& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
  out.write(buf, res.ptr - buf);
}

}  // namespace

void write_matrix_market(std::ostream& out, const SparseMatrix& A) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.n_rows << " " << A.n_cols << " " << A.nnz() << "\n";
  for (index_t i = 0; i < A.n_rows; ++i) {
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      out << (i + 1) << " " << (A.col_indices[k] + 1) << " ";
      write_double(out, A.values[k]);
      out << "\n";
    }
  }
}

void write_matrix_market_file(const std::string& path, const SparseMatrix& A) {
  std::ofstream out(path);
  require(out.good(), "cannot open '" + path + "' for writing");
  write_matrix_market(out, A);
  require(out.good(), "write to '" + path + "' failed");
}

void write_vector_market(std::ostream& out, const Vector& x) {
  require(!x.empty(), "matrix market: empty vector");
  out << "%%MatrixMarket matrix array real general\n";
  out << x.size() << " 1\n";
  for (const double v : x) {
    write_double(out, v);
    out << "\n";
  }
}

void write_vector_market_file(const std::string& path, const Vector& x) {
  std::ofstream out(path);
  require(out.good(), "cannot open '" + path + "' for writing");
  write_vector_market(out, x);
  require(out.good(), "write to '" + path + "' failed");
}

}  // namespace aggmg
