// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0

#include "aggmg/cycles.hpp"

#include <iostream>

#include "aggmg/error.hpp"
#include "aggmg/parallel.hpp"
#include "aggmg/vector_ops.hpp"

namespace aggmg {

namespace {

bool accelerated(const CycleConfig& cfg, index_t k) {
  if (cfg.kind == CycleKind::k) return true;
  if (cfg.kind == CycleKind::hybrid) return k < static_cast<index_t>(cfg.k_levels);
  return false;
}

void inner_cycle(const Hierarchy& h, const CycleConfig& cfg, index_t k, const Vector& b,
                 Vector& x) {
  if (accelerated(cfg, k))
    kcycle(h, cfg, k, b, x);
  else
    vcycle(h, k, b, x);
}

Vector residual(const SparseMatrix& A, const Vector& b, const Vector& x) {
  Vector r(b.size());
  spmv(A, x, r);
  parallel_for(A.n_rows, [&](index_t i) { r[i] = b[i] - r[i]; });
  return r;
}

void prolongate_add(const SparseMatrix& P, const Vector& xc, Vector& x) {
  parallel_for(P.n_rows, [&](index_t i) {
    double sum = 0.0;
    for (index_t k = P.row_offsets[i]; k < P.row_offsets[i + 1]; ++k)
      sum += P.values[k] * xc[P.col_indices[k]];
    x[i] += sum;
  });
}

}  // namespace

void vcycle(const Hierarchy& h, index_t k, const Vector& b, Vector& x) {
  if (k == h.coarsest()) {
    h.coarse_factorization.solve(std::span<const double>(b), std::span<double>(x));
    return;
  }
  const Level& lvl = h.levels[k];
  smooth(lvl.smoother, lvl.A, b, x);
  const Vector r = residual(lvl.A, b, x);
  Vector rc(lvl.R.n_rows);
  spmv(lvl.R, r, rc);
  Vector xc(rc.size(), 0.0);
  if (k + 1 == h.coarsest())
    h.coarse_factorization.solve(std::span<const double>(rc), std::span<double>(xc));
  else
    vcycle(h, k + 1, rc, xc);
  prolongate_add(lvl.P, xc, x);
  smooth(lvl.smoother, lvl.A, b, x);
}

void kcycle(const Hierarchy& h, const CycleConfig& cfg, index_t k, const Vector& b,
            Vector& x) {
  if (k == h.coarsest()) {
    h.coarse_factorization.solve(std::span<const double>(b), std::span<double>(x));
    return;
  }
  const Level& lvl = h.levels[k];
  smooth(lvl.smoother, lvl.A, b, x);
  const Vector r = residual(lvl.A, b, x);
  Vector rc(lvl.R.n_rows);
  spmv(lvl.R, r, rc);
  Vector xc(rc.size(), 0.0);

  if (k + 1 == h.coarsest()) {
    h.coarse_factorization.solve(std::span<const double>(rc), std::span<double>(xc));
  } else {
    const SparseMatrix& Ac = h.levels[k + 1].A;
    Vector c(rc.size(), 0.0);
    inner_cycle(h, cfg, k + 1, rc, c);
    Vector v(rc.size());
    spmv(Ac, c, v);
    double rho1, alpha1;
    if (cfg.inner == InnerKind::cg) {
      rho1 = dot(c, v);
      alpha1 = dot(c, rc);
    } else {
      rho1 = dot(v, v);
      alpha1 = dot(v, rc);
    }
    if (rho1 == 0.0) {
      std::cerr << "kcycle: zero curvature at level " << k + 1
                << ", keeping the unscaled correction\n";
      xc = c;
    } else {
      const double s1 = alpha1 / rho1;
      Vector rt = rc;
      axpy(-s1, v, rt);
      if (norm2(rt) <= cfg.t * norm2(rc)) {
        xc = c;
        scale(s1, xc);
      } else {
        Vector d(rc.size(), 0.0);
        inner_cycle(h, cfg, k + 1, rt, d);
        Vector w(rc.size());
        spmv(Ac, d, w);
        double gamma, beta, alpha2;
        if (cfg.inner == InnerKind::cg) {
          gamma = dot(d, v);
          beta = dot(d, w);
          alpha2 = dot(d, rt);
        } else {
          gamma = dot(w, v);
          beta = dot(w, w);
          alpha2 = dot(w, rt);
        }
        const double rho2 = beta - gamma * gamma / rho1;
        if (rho2 == 0.0) {
          std::cerr << "kcycle: singular inner Gram matrix at level " << k + 1
                    << ", keeping the one-step correction\n";
          xc = c;
          scale(s1, xc);
        } else {
          xc = c;
          scale(s1 - gamma * alpha2 / (rho1 * rho2), xc);
          axpy(alpha2 / rho2, d, xc);
        }
      }
    }
  }
  prolongate_add(lvl.P, xc, x);
  smooth(lvl.smoother, lvl.A, b, x);
}

Vector apply_preconditioner(const Hierarchy& h, const CycleConfig& cfg, const Vector& r) {
  require(static_cast<index_t>(r.size()) == h.levels[0].A.n_rows,
          "preconditioner: vector length mismatch");
  Vector z(r.size(), 0.0);
  inner_cycle(h, cfg, 0, r, z);
  return z;
}

}  // namespace aggmg
