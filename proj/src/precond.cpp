// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/precond.hpp"

#include "sadpre/cg.hpp"
#include "sadpre/errors.hpp"

namespace sadpre {

std::string to_string(PrecondKind k) {
  switch (k) {
    case PrecondKind::none:
      return "none";
    case PrecondKind::hss:
      return "hss";
    case PrecondKind::rhss:
      return "rhss";
    case PrecondKind::rehss:
      return "rehss";
  }
  return "?";
}

PrecondKind precond_kind_from_string(const std::string& s) {
  if (s == "none") return PrecondKind::none;
  if (s == "hss") return PrecondKind::hss;
  if (s == "rhss") return PrecondKind::rhss;
  if (s == "rehss") return PrecondKind::rehss;
  throw Error("unknown preconditioner kind: " + s);
}

namespace {

LinOp spmv_op(const SparseMatrix& m) {
  return [&m](std::span<const double> x, std::span<double> y) {
    kernels::csr_spmv(m.nrows, m.row_offsets.data(), m.col_indices.data(),
                      m.values.data(), x.data(), y.data());
  };
}

// One SPD sub-solve, by the cached factorization or by CG.
std::vector<double> inner_solve(const PrecondContext& ctx,
                                const std::optional<CholeskyFactor>& chol,
                                const SparseMatrix& mat,
                                std::span<const double> rhs) {
  if (ctx.inner.mode == InnerStrategy::Mode::direct) return solve_chol(*chol, rhs);
  const int maxit = ctx.inner.cg_maxit > 0 ? ctx.inner.cg_maxit
                                           : 2 * static_cast<int>(rhs.size());
  return cg_solve(spmv_op(mat), rhs, ctx.inner.cg_tol, maxit).x;
}

}  // namespace

PrecondContext build_precond(const SaddlePointSystem& sys, PrecondKind kind,
                             double alpha, InnerStrategy inner) {
  if (kind != PrecondKind::none && alpha <= 0.0)
    throw InvalidAlpha("build_precond: alpha must be strictly positive");
  if (inner.mode == InnerStrategy::Mode::cg &&
      (inner.cg_tol <= 0.0 || inner.cg_tol > 1e-6))
    throw Error("build_precond: cg_tol must lie in (0, 1e-6]");

  PrecondContext ctx;
  ctx.kind = kind;
  ctx.alpha = alpha;
  ctx.sys = &sys;
  ctx.inner = inner;
  const bool direct = inner.mode == InnerStrategy::Mode::direct;

  switch (kind) {
    case PrecondKind::none:
      break;
    case PrecondKind::rehss:
      ctx.S_rehss = shift_diag(gram(sys.B), alpha);
      if (direct) {
        ctx.chol_A = cholesky(sys.A, "A");
        ctx.chol_S = cholesky(ctx.S_rehss, "alpha*I + B*Bt");
      }
      break;
    case PrecondKind::rhss:
      ctx.BBt = gram(sys.B);
      if (direct) {
        ctx.chol_A = cholesky(sys.A, "A");
        ctx.chol_BBt = cholesky(ctx.BBt, "B*Bt");
      }
      break;
    case PrecondKind::hss:
      ctx.A_shift = shift_diag(sys.A, alpha);
      ctx.hss_schur = shift_diag(gram(sys.B), alpha * alpha);
      if (direct) {
        ctx.chol_A_shift = cholesky(ctx.A_shift, "A + alpha*I");
        ctx.chol_hss_schur = cholesky(ctx.hss_schur, "alpha^2*I + B*Bt");
      }
      break;
  }
  return ctx;
}

BlockVector apply_rehss(const PrecondContext& ctx, const BlockVector& r) {
  if (ctx.kind != PrecondKind::rehss)
    throw Error("apply_rehss: context was not built for REHSS");
  const SaddlePointSystem& sys = *ctx.sys;
  // w1 <- A^{-1} r1
  const std::vector<double> w1 = inner_solve(ctx, ctx.chol_A, sys.A, r.x);
  // w2 <- (aI + B Bt)^{-1} (B w1 + r2)
  std::vector<double> t = spmv(sys.B, w1);
  kernels::axpy(1.0, r.y.data(), t.data(), t.size());
  BlockVector z;
  z.y = inner_solve(ctx, ctx.chol_S, ctx.S_rehss, t);
  // z1 <- w1 - Bt w2
  z.x = spmv_t(sys.B, z.y);
  kernels::scal(-1.0, z.x.data(), z.x.size());
  kernels::axpy(1.0, w1.data(), z.x.data(), z.x.size());
  return z;
}

BlockVector apply_rhss(const PrecondContext& ctx, const BlockVector& r) {
  if (ctx.kind != PrecondKind::rhss)
    throw Error("apply_rhss: context was not built for RHSS");
  const SaddlePointSystem& sys = *ctx.sys;
  const double a = ctx.alpha;
  // w1 <- A^{-1} r1
  const std::vector<double> w1 = inner_solve(ctx, ctx.chol_A, sys.A, r.x);
  // z2 <- a (B Bt)^{-1} (B w1 + r2)
  std::vector<double> t = spmv(sys.B, w1);
  kernels::axpy(1.0, r.y.data(), t.data(), t.size());
  BlockVector z;
  z.y = inner_solve(ctx, ctx.chol_BBt, ctx.BBt, t);
  kernels::scal(a, z.y.data(), z.y.size());
  // z1 <- w1 - (1/a) Bt z2
  z.x = spmv_t(sys.B, z.y);
  kernels::scal(-1.0 / a, z.x.data(), z.x.size());
  kernels::axpy(1.0, w1.data(), z.x.data(), z.x.size());
  return z;
}

BlockVector apply_hss(const PrecondContext& ctx, const BlockVector& r) {
  if (ctx.kind != PrecondKind::hss)
    throw Error("apply_hss: context was not built for HSS");
  const SaddlePointSystem& sys = *ctx.sys;
  const double a = ctx.alpha;
  // u1 <- (A + aI)^{-1} r1, u2 <- r2 / a
  const std::vector<double> u1 = inner_solve(ctx, ctx.chol_A_shift, ctx.A_shift, r.x);
  // z2 <- (a^2 I + B Bt)^{-1} (a^2 u2 + a B u1); a^2 u2 = a r2
  std::vector<double> t = spmv(sys.B, u1);
  kernels::scal(a, t.data(), t.size());
  kernels::axpy(a, r.y.data(), t.data(), t.size());
  BlockVector z;
  z.y = inner_solve(ctx, ctx.chol_hss_schur, ctx.hss_schur, t);
  // z1 <- u1 - (1/a) Bt z2
  z.x = spmv_t(sys.B, z.y);
  kernels::scal(-1.0 / a, z.x.data(), z.x.size());
  kernels::axpy(1.0, u1.data(), z.x.data(), z.x.size());
  return z;
}

BlockVector apply_precond(const PrecondContext& ctx, const BlockVector& r) {
  switch (ctx.kind) {
    case PrecondKind::none:
      return r;
    case PrecondKind::hss:
      return apply_hss(ctx, r);
    case PrecondKind::rhss:
      return apply_rhss(ctx, r);
    case PrecondKind::rehss:
      return apply_rehss(ctx, r);
  }
  throw Error("apply_precond: bad kind");
}

BlockVector apply_precond_forward(const PrecondContext& ctx, const BlockVector& r) {
  if (ctx.kind == PrecondKind::none) return r;
  const SaddlePointSystem& sys = *ctx.sys;
  const double a = ctx.alpha;
  const std::vector<double> bt_r2 = spmv_t(sys.B, r.y);
  BlockVector z;
  z.y = spmv(sys.B, r.x);
  kernels::scal(-1.0, z.y.data(), z.y.size());
  switch (ctx.kind) {
    case PrecondKind::rehss: {
      // z1 = A r1 + A Bt r2, z2 = -B r1 + a r2
      std::vector<double> t(r.x);
      kernels::axpy(1.0, bt_r2.data(), t.data(), t.size());
      z.x = spmv(sys.A, t);
      kernels::axpy(a, r.y.data(), z.y.data(), z.y.size());
      break;
    }
    case PrecondKind::rhss: {
      // z1 = A r1 + (1/a) A Bt r2, z2 = -B r1
      std::vector<double> t(r.x);
      kernels::axpy(1.0 / a, bt_r2.data(), t.data(), t.size());
      z.x = spmv(sys.A, t);
      break;
    }
    case PrecondKind::hss: {
      // z1 = (A + aI) r1 + Bt r2 + (1/a) A Bt r2, z2 = -B r1 + a r2
      z.x = spmv(sys.A, r.x);
      kernels::axpy(a, r.x.data(), z.x.data(), z.x.size());
      kernels::axpy(1.0, bt_r2.data(), z.x.data(), z.x.size());
      const std::vector<double> abt = spmv(sys.A, bt_r2);
      kernels::axpy(1.0 / a, abt.data(), z.x.data(), z.x.size());
      kernels::axpy(a, r.y.data(), z.y.data(), z.y.size());
      break;
    }
    case PrecondKind::none:
      break;
  }
  return z;
}

}  // namespace sadpre
