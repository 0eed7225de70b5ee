// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "aggmg/dense.hpp"
#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"
#include "aggmg/rng.hpp"
#include "aggmg/vector_ops.hpp"

namespace aggmg {

namespace {

Vector inverse_diagonal(const SparseMatrix& A) {
  Vector inv(A.n_rows);
  for (index_t i = 0; i < A.n_rows; ++i) {
    const double d = A.at(i, i);
    if (d == 0.0) throw Error("smoother: zero diagonal at row " + std::to_string(i));
    inv[i] = 1.0 / d;
  }
  return inv;
}

// Arnoldi estimate of the largest eigenvalue magnitude of D^{-1} A.
// Projection coefficients use the ratio form dot(v, w) / dot(v, v); the
// denominators sit at 1 to rounding, and when the operator fixes the
// start vector bit-for-bit the first coefficient is exactly 1, so a
// diagonal matrix with exactly representable scalings yields rho == 1
// and omega == 4/3 without any special casing.
double estimate_rho(const SparseMatrix& A, const Vector& inv_diag, int m,
                    std::uint64_t seed) {
  const index_t n = A.n_rows;
  m = std::min<int>(m, static_cast<int>(n));
  Vector q(n);
  parallel_for(n, [&](index_t i) { q[i] = uniform_sym(seed, static_cast<std::uint64_t>(i)); });
  const double qn = norm2(q);
  require(qn > 0.0, "smoother: degenerate start vector");
  scale(1.0 / qn, q);

  std::vector<Vector> V;
  V.push_back(std::move(q));
  DenseMatrix H(m + 1, m);
  int m_eff = m;
  Vector w(n);
  for (int j = 0; j < m; ++j) {
    spmv(A, V[j], w);
    parallel_for(n, [&](index_t i) { w[i] *= inv_diag[i]; });
    double h_scale = 0.0;
    for (int i = 0; i <= j; ++i) {
      const double h = dot(V[i], w) / dot(V[i], V[i]);
      H(i, j) = h;
      axpy(-h, V[i], w);
      h_scale = std::max(h_scale, std::abs(h));
    }
    const double hj = norm2(w);
    if (hj <= 1e-12 * std::max(h_scale, 1.0)) {
      m_eff = j + 1;
      break;
    }
    H(j + 1, j) = hj;
    if (j + 1 < m) {
      Vector next = w;
      scale(1.0 / hj, next);
      V.push_back(std::move(next));
    }
  }

  DenseMatrix Hm(m_eff, m_eff);
  for (int i = 0; i < m_eff; ++i)
    for (int j = 0; j < m_eff; ++j) Hm(i, j) = H(i, j);
  double rho = 0.0;
  for (const auto& ev : hessenberg_eigenvalues(Hm)) rho = std::max(rho, std::abs(ev));
  require(rho > 0.0, "smoother: spectral radius estimate collapsed to zero");
  return rho;
}

}  // namespace

SmootherState setup_smoother(const SparseMatrix& A, SmootherKind kind, int arnoldi_m,
                             std::uint64_t seed) {
  require(A.n_rows == A.n_cols, "smoother: matrix must be square");
  require(arnoldi_m >= 1 && arnoldi_m <= 5, "smoother: arnoldi_m must be in [1, 5]");
  SmootherState s;
  s.kind = kind;
  s.arnoldi_m = arnoldi_m;
  s.inv_diag = inverse_diagonal(A);
  if (kind == SmootherKind::damped_jacobi) {
    s.rho_est = estimate_rho(A, s.inv_diag, arnoldi_m, seed);
    s.omega = (4.0 / 3.0) / s.rho_est;
  }
  return s;
}

void smooth(const SmootherState& s, const SparseMatrix& A, const Vector& b, Vector& x) {
  const index_t n = A.n_rows;
  require(static_cast<index_t>(b.size()) == n && static_cast<index_t>(x.size()) == n,
          "smooth: vector length mismatch");
  if (s.kind == SmootherKind::sgs) {
    for (index_t i = 0; i < n; ++i) {
      double sum = b[i];
      for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
        if (A.col_indices[k] != i) sum -= A.values[k] * x[A.col_indices[k]];
      x[i] = sum * s.inv_diag[i];
    }
    for (index_t i = n - 1; i >= 0; --i) {
      double sum = b[i];
      for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
        if (A.col_indices[k] != i) sum -= A.values[k] * x[A.col_indices[k]];
      x[i] = sum * s.inv_diag[i];
    }
    return;
  }
  const double omega = (s.kind == SmootherKind::jacobi) ? 1.0 : s.omega;
  Vector r(n);
  spmv(A, x, r);
  parallel_for(n, [&](index_t i) { x[i] += omega * s.inv_diag[i] * (b[i] - r[i]); });
}

}  // namespace aggmg
