// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/krylov.hpp"

#include <chrono>
#include <cmath>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"
#include "aggmg/vector_ops.hpp"

namespace aggmg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vector apply_precond(const Preconditioner& M, const Vector& r) {
  return M ? M(r) : r;
}

Vector true_residual(const SparseMatrix& A, const Vector& b, const Vector& x) {
  Vector r(b.size());
  spmv(A, x, r);
  parallel_for(A.n_rows, [&](index_t i) { r[i] = b[i] - r[i]; });
  return r;
}

}  // namespace

SolveResult fgmres(const SparseMatrix& A, const Vector& b, const Vector& x0,
                   const Preconditioner& M, const SolverConfig& cfg) {
  require(A.n_rows == A.n_cols, "fgmres: matrix must be square");
  require(static_cast<index_t>(b.size()) == A.n_rows &&
              static_cast<index_t>(x0.size()) == A.n_rows,
          "fgmres: vector length mismatch");
  require(cfg.tol > 0.0, "fgmres: tol must be positive");
  require(cfg.restart >= 1, "fgmres: restart must be at least 1");
  const auto t0 = Clock::now();
  const index_t n = A.n_rows;
  const int m = cfg.restart;

  SolveResult out;
  out.x = x0;
  SolveReport& rep = out.report;

  const double norm_b = norm2(b);
  if (norm_b == 0.0) {
    out.x.assign(n, 0.0);
    rep.converged = true;
    rep.residual_history.push_back(0.0);
    rep.solve_seconds = seconds_since(t0);
    return out;
  }
  const double target = cfg.tol * norm_b;

  Vector r = true_residual(A, b, out.x);
  double beta = norm2(r);
  rep.residual_history.push_back(beta);

  std::vector<Vector> V, Z;
  std::vector<double> H((m + 1) * m, 0.0);  // column-major, leading dim m+1
  const auto h = [&](int i, int j) -> double& { return H[j * (m + 1) + i]; };
  std::vector<double> cs(m), sn(m), g(m + 1);

  double prev_outer = beta;
  while (beta > target && rep.iterations < cfg.max_iters) {
    V.assign(1, r);
    scale(1.0 / beta, V[0]);
    Z.clear();
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::fill(H.begin(), H.end(), 0.0);

    int j = 0;
    for (; j < m && rep.iterations < cfg.max_iters; ++j) {
      Z.push_back(apply_precond(M, V[j]));
      Vector w(n);
      spmv(A, Z[j], w);
      for (int i = 0; i <= j; ++i) {
        h(i, j) = dot(V[i], w);
        axpy(-h(i, j), V[i], w);
      }
      h(j + 1, j) = norm2(w);
      const bool breakdown = (h(j + 1, j) == 0.0);
      if (!breakdown) {
        scale(1.0 / h(j + 1, j), w);
        V.push_back(std::move(w));
      }
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = t;
      }
      const double denom = std::hypot(h(j, j), h(j + 1, j));
      if (denom == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else {
        cs[j] = h(j, j) / denom;
        sn[j] = h(j + 1, j) / denom;
      }
      h(j, j) = cs[j] * h(j, j) + sn[j] * h(j + 1, j);
      h(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      ++rep.iterations;
      rep.residual_history.push_back(std::abs(g[j + 1]));
      if (std::abs(g[j + 1]) <= target || breakdown) {
        ++j;
        break;
      }
    }

    // Least-squares update from the rotated Hessenberg.
    std::vector<double> y(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int l = i + 1; l < j; ++l) s -= h(i, l) * y[l];
      y[i] = s / h(i, i);
    }
    for (int i = 0; i < j; ++i) axpy(y[i], Z[i], out.x);

    r = true_residual(A, b, out.x);
    beta = norm2(r);
    rep.residual_history.back() = beta;
    if (beta > target && beta >= prev_outer && j == m) {
      rep.note = "stagnation: no residual decrease over a full restart cycle";
    }
    prev_outer = beta;
  }
  rep.converged = (beta <= target);
  rep.solve_seconds = seconds_since(t0);
  return out;
}

SolveResult pcg(const SparseMatrix& A, const Vector& b, const Vector& x0,
                const Preconditioner& M, const SolverConfig& cfg) {
  require(A.n_rows == A.n_cols, "pcg: matrix must be square");
  require(static_cast<index_t>(b.size()) == A.n_rows &&
              static_cast<index_t>(x0.size()) == A.n_rows,
          "pcg: vector length mismatch");
  require(cfg.tol > 0.0, "pcg: tol must be positive");
  const auto t0 = Clock::now();
  const index_t n = A.n_rows;

  SolveResult out;
  out.x = x0;
  SolveReport& rep = out.report;

  const double norm_b = norm2(b);
  if (norm_b == 0.0) {
    out.x.assign(n, 0.0);
    rep.converged = true;
    rep.residual_history.push_back(0.0);
    rep.solve_seconds = seconds_since(t0);
    return out;
  }
  const double target = cfg.tol * norm_b;

  Vector r = true_residual(A, b, out.x);
  double res = norm2(r);
  rep.residual_history.push_back(res);

  Vector z = apply_precond(M, r);
  Vector p = z;
  double rz = dot(r, z);
  Vector Ap(n);

  while (res > target && rep.iterations < cfg.max_iters) {
    spmv(A, p, Ap);
    const double pAp = dot(p, Ap);
    require(pAp > 0.0,
            "pcg: non-positive curvature (matrix not positive definite); use fgmres");
    const double alpha = rz / pAp;
    axpy(alpha, p, out.x);
    Vector r_old = r;
    axpy(-alpha, Ap, r);
    ++rep.iterations;
    res = norm2(r);
    rep.residual_history.push_back(res);
    if (res <= target) break;

    z = apply_precond(M, r);
    const double rz_new = dot(r, z);
    // Flexible update: beta from z^T (r - r_old) so a slowly varying
    // preconditioner keeps consecutive directions conjugate.
    const double beta = (rz_new - dot(r_old, z)) / rz;
    parallel_for(n, [&](index_t i) { p[i] = z[i] + beta * p[i]; });
    rz = rz_new;
  }
  rep.converged = (res <= target);
  rep.solve_seconds = seconds_since(t0);
  return out;
}

}  // namespace aggmg
