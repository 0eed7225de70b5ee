// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"

namespace aggmg {

DenseMatrix to_dense(const SparseMatrix& A) {
  DenseMatrix D(A.n_rows, A.n_cols);
  for (index_t i = 0; i < A.n_rows; ++i)
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      D(i, A.col_indices[k]) = A.values[k];
  return D;
}

LuFactors lu_factor(const DenseMatrix& A) {
  require(A.n_rows == A.n_cols, "lu_factor: matrix must be square");
  const index_t n = A.n_rows;
  LuFactors f;
  f.lu = A;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), index_t{0});
  DenseMatrix& lu = f.lu;
  for (index_t k = 0; k < n; ++k) {
    index_t piv = k;
    double best = std::abs(lu(k, k));
    for (index_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) throw Error("lu_factor: zero pivot at index " + std::to_string(k));
    if (piv != k) {
      for (index_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    const double inv = 1.0 / lu(k, k);
    // Rows update independently; each row's arithmetic stays sequential.
    parallel_for(n - k - 1, [&](index_t t) {
      const index_t i = k + 1 + t;
      const double m = lu(i, k) * inv;
      lu(i, k) = m;
      for (index_t j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
    });
  }
  return f;
}

void LuFactors::solve(std::span<const double> b, std::span<double> x) const {
  const index_t n = lu.n_rows;
  require(static_cast<index_t>(b.size()) == n && static_cast<index_t>(x.size()) == n,
          "LuFactors::solve: length mismatch");
  for (index_t i = 0; i < n; ++i) {
    double s = b[perm[i]];
    for (index_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
    x[i] = s;
  }
  for (index_t i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (index_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
    x[i] = s / lu(i, i);
  }
}

Vector LuFactors::solve(const Vector& b) const {
  Vector x(lu.n_rows);
  solve(std::span<const double>(b), std::span<double>(x));
  return x;
}

namespace {

// Francis double-shift QR on an upper-Hessenberg matrix, eigenvalues only.
// Standard deflation by negligible subdiagonal; 1x1 and 2x2 trailing blocks
// are resolved directly.
void eig_2x2(double a, double b, double c, double d,
             std::vector<std::complex<double>>& out) {
  const double tr = a + d;
  const double det = a * d - b * c;
  const double disc = tr * tr / 4.0 - det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    out.emplace_back(tr / 2.0 + s, 0.0);
    out.emplace_back(tr / 2.0 - s, 0.0);
  } else {
    const double s = std::sqrt(-disc);
    out.emplace_back(tr / 2.0, s);
    out.emplace_back(tr / 2.0, -s);
  }
}

}  // namespace

std::vector<std::complex<double>> hessenberg_eigenvalues(DenseMatrix H) {
  require(H.n_rows == H.n_cols, "hessenberg_eigenvalues: matrix must be square");
  const index_t n = H.n_rows;
  std::vector<std::complex<double>> eig;
  eig.reserve(n);
  if (n == 0) return eig;

  index_t hi = n - 1;
  int iter_since_deflate = 0;
  const int max_total = 30 * static_cast<int>(n) + 100;
  int total = 0;
  while (hi >= 0) {
    require(total++ < max_total, "hessenberg_eigenvalues: QR iteration did not converge");
    // Deflate converged trailing part.
    index_t lo = hi;
    while (lo > 0) {
      const double off = std::abs(H(lo, lo - 1));
      const double scale = std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo));
      if (off <= 1e-14 * (scale > 0.0 ? scale : 1.0)) {
        H(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.emplace_back(H(hi, hi), 0.0);
      --hi;
      iter_since_deflate = 0;
      continue;
    }
    if (lo == hi - 1) {
      eig_2x2(H(lo, lo), H(lo, hi), H(hi, lo), H(hi, hi), eig);
      hi -= 2;
      iter_since_deflate = 0;
      continue;
    }

    // Double-shift from the trailing 2x2; exceptional shift if stuck.
    double s = H(hi - 1, hi - 1) + H(hi, hi);
    double t = H(hi - 1, hi - 1) * H(hi, hi) - H(hi - 1, hi) * H(hi, hi - 1);
    if (++iter_since_deflate % 20 == 0) {
      const double w = std::abs(H(hi, hi - 1)) + std::abs(H(hi - 1, hi - 2));
      s = 1.5 * w;
      t = w * w;
    }
    double x = H(lo, lo) * H(lo, lo) + H(lo, lo + 1) * H(lo + 1, lo) - s * H(lo, lo) + t;
    double y = H(lo + 1, lo) * (H(lo, lo) + H(lo + 1, lo + 1) - s);
    double z = H(lo + 2, lo + 1) * H(lo + 1, lo);

    for (index_t k = lo; k <= hi - 2; ++k) {
      // Householder reflector annihilating (y, z) into x.
      double alpha = std::sqrt(x * x + y * y + z * z);
      if (alpha == 0.0) {
        x = H(k + 1, k);
        y = H(k + 2, k);
        z = (k + 3 <= hi) ? H(k + 3, k) : 0.0;
        continue;
      }
      if (x > 0.0) alpha = -alpha;
      const double v0 = x - alpha;
      const double norm2 = v0 * v0 + y * y + z * z;
      const double beta = 2.0 / norm2;
      const double v[3] = {v0, y, z};
      const index_t c0 = (k > lo) ? k - 1 : lo;
      for (index_t j = c0; j <= hi; ++j) {
        double dot = v[0] * H(k, j) + v[1] * H(k + 1, j) + v[2] * H(k + 2, j);
        dot *= beta;
        H(k, j) -= dot * v[0];
        H(k + 1, j) -= dot * v[1];
        H(k + 2, j) -= dot * v[2];
      }
      const index_t rend = std::min<index_t>(k + 3, hi);
      for (index_t i = lo; i <= rend; ++i) {
        double dot = v[0] * H(i, k) + v[1] * H(i, k + 1) + v[2] * H(i, k + 2);
        dot *= beta;
        H(i, k) -= dot * v[0];
        H(i, k + 1) -= dot * v[1];
        H(i, k + 2) -= dot * v[2];
      }
      x = H(k + 1, k);
      y = H(k + 2, k);
      z = (k + 3 <= hi) ? H(k + 3, k) : 0.0;
    }
    // Final Givens on the trailing pair of the bulge.
    {
      const index_t k = hi - 1;
      const double a = x;
      const double b = y;
      const double r = std::hypot(a, b);
      if (r > 0.0) {
        const double c = a / r;
        const double sn = b / r;
        for (index_t j = k - 1; j <= hi; ++j) {
          const double t1 = H(k, j);
          const double t2 = H(k + 1, j);
          H(k, j) = c * t1 + sn * t2;
          H(k + 1, j) = -sn * t1 + c * t2;
        }
        for (index_t i = lo; i <= hi; ++i) {
          const double t1 = H(i, k);
          const double t2 = H(i, k + 1);
          H(i, k) = c * t1 + sn * t2;
          H(i, k + 1) = -sn * t1 + c * t2;
        }
      }
    }
  }
  return eig;
}

}  // namespace aggmg
