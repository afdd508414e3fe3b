// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/theory.hpp"

#include <cmath>

#include "sadpre/cholesky.hpp"
#include "sadpre/errors.hpp"
#include "sadpre/power.hpp"

namespace sadpre {

namespace {

void check_desk_scale(const SaddlePointSystem& sys) {
  if (sys.n() + sys.m() > 2000)
    throw DenseLimitExceeded("dense theory path limited to n + m <= 2000, got " +
                             std::to_string(sys.n() + sys.m()));
}

void symmetrize(DenseMatrix& m) {
  for (index_t i = 0; i < m.nrows; ++i)
    for (index_t j = i + 1; j < m.ncols; ++j)
      m(i, j) = m(j, i) = 0.5 * (m(i, j) + m(j, i));
}

}  // namespace

// Dense m x m product B A^{-1} Bt via m Cholesky solves.
DenseMatrix schur_ainv_dense(const SaddlePointSystem& sys,
                             const CholeskyFactor& chol_A) {
  const index_t n = sys.n();
  const index_t m = sys.m();
  DenseMatrix x(n, m);  // column i = A^{-1} Bt e_i
  std::vector<double> rhs(n);
  for (index_t i = 0; i < m; ++i) {
    std::fill(rhs.begin(), rhs.end(), 0.0);
    for (index_t k = sys.B.row_offsets[i]; k < sys.B.row_offsets[i + 1]; ++k)
      rhs[sys.B.col_indices[k]] = sys.B.values[k];
    const std::vector<double> col = solve_chol(chol_A, rhs);
    for (index_t r = 0; r < n; ++r) x(r, i) = col[r];
  }
  DenseMatrix c(m, m);
  for (index_t i = 0; i < m; ++i)
    for (index_t k = sys.B.row_offsets[i]; k < sys.B.row_offsets[i + 1]; ++k) {
      const index_t r = sys.B.col_indices[k];
      kernels::axpy(sys.B.values[k], x.row(r), c.row(i), m);
    }
  symmetrize(c);
  return c;
}

// Eigenvalues of S^{-1} C for SPD S = L Lt, symmetric C, via the congruent
// symmetric matrix L^{-1} C L^{-T}.
std::vector<double> congruence_eigs(const CholeskyFactor& chol_S,
                                    const DenseMatrix& c) {
  const index_t m = c.nrows;
  DenseMatrix y(m, m);  // Y = L^{-1} C
  std::vector<double> col(m);
  for (index_t j = 0; j < m; ++j) {
    for (index_t i = 0; i < m; ++i) col[i] = c(i, j);
    const std::vector<double> s = solve_lower(chol_S, col);
    for (index_t i = 0; i < m; ++i) y(i, j) = s[i];
  }
  DenseMatrix w(m, m);  // W = Y L^{-T}, i.e. row j of W solves L w = row j of Y
  for (index_t j = 0; j < m; ++j) {
    const std::vector<double> s =
        solve_lower(chol_S, std::span<const double>(y.row(j), m));
    for (index_t i = 0; i < m; ++i) w(j, i) = s[i];
  }
  symmetrize(w);
  return sym_eigs(w);
}

ConvergenceBounds compute_bounds(const SaddlePointSystem& sys) {
  check_desk_scale(sys);
  ConvergenceBounds out;

  const std::vector<double> eig_a = sym_eigs(to_dense(sys.A));
  out.lambda_min_A = eig_a.front();
  out.lambda_max_A = eig_a.back();

  const SparseMatrix bbt = gram(sys.B);
  const DenseMatrix bbt_dense = to_dense(bbt);
  const std::vector<double> eig_bbt = sym_eigs(bbt_dense);
  out.sigma_min_B = std::sqrt(std::max(eig_bbt.front(), 0.0));
  out.sigma_max_B = std::sqrt(std::max(eig_bbt.back(), 0.0));

  const CholeskyFactor chol_a = cholesky(sys.A, "A");
  const DenseMatrix c = schur_ainv_dense(sys, chol_a);

  DenseMatrix q(sys.m(), sys.m());
  for (index_t i = 0; i < sys.m(); ++i)
    for (index_t j = 0; j < sys.m(); ++j)
      q(i, j) = 0.5 * c(i, j) - bbt_dense(i, j);
  symmetrize(q);
  out.delta = sym_eigs(q).back();

  out.theta = 0.5 * out.sigma_max_B * out.sigma_max_B / out.lambda_min_A -
              out.sigma_min_B * out.sigma_min_B;

  const CholeskyFactor chol_bbt = cholesky(bbt, "BBt");
  const std::vector<double> mu = congruence_eigs(chol_bbt, c);
  out.mu_m = mu.front();
  out.mu1 = mu.back();
  out.alpha_opt_rhss = 2.0 / (out.mu1 + out.mu_m);
  out.rhss_upper = 2.0 / out.mu1;

  const double kappa = out.sigma_max_B / out.sigma_min_B;
  out.corollary_holds = out.lambda_min_A > 0.5 * kappa * kappa;
  return out;
}

BlockVector gamma_action(const SaddlePointSystem& sys, const PrecondContext& ctx,
                         const BlockVector& u) {
  if (ctx.kind != PrecondKind::rehss)
    throw Error("gamma_action: context must be REHSS");
  BlockVector r = apply_rehss(ctx, apply_saddle(sys, u));
  scal(-1.0, r);
  axpy(1.0, u, r);
  return r;
}

std::pair<BlockVector, IterationReport> rehss_iterate(const SaddlePointSystem& sys,
                                                      double alpha,
                                                      const BlockVector& u0,
                                                      double tol, int maxit) {
  const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, alpha);
  const BlockVector b = sys.rhs();
  const double bnorm = norm2(b);

  BlockVector u = u0;
  IterationReport rep;
  BlockVector res = b - apply_saddle(sys, u);
  double rn = norm2(res);
  const double rn0 = rn;
  rep.error_history.push_back(rn);

  while (rn > tol * bnorm && rep.iterations < maxit) {
    if (rn > 1e6 * rn0 && rn0 > 0.0)
      throw Diverged("rehss_iterate: residual grew by 1e6 over its start value");
    const BlockVector z = apply_rehss(ctx, res);
    axpy(1.0, z, u);
    res = b - apply_saddle(sys, u);
    rn = norm2(res);
    rep.error_history.push_back(rn);
    ++rep.iterations;
  }
  rep.converged = rn <= tol * bnorm;

  // Tail contraction rate over up to the last 10 steps.
  const int k = rep.iterations;
  if (k >= 1) {
    const int k0 = std::max(0, k - 10);
    const double num = rep.error_history[k];
    const double den = rep.error_history[k0];
    if (num > 0.0 && den > 0.0)
      rep.rho_estimate = std::pow(num / den, 1.0 / (k - k0));
  }
  return {u, rep};
}

double spectral_radius_gamma(const SaddlePointSystem& sys, double alpha,
                             double tol, int maxit) {
  const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, alpha);
  const index_t n = sys.n();
  const index_t m = sys.m();
  const LinOp gamma = [&](std::span<const double> in, std::span<double> out) {
    const BlockVector r =
        gamma_action(sys, ctx, BlockVector::from_flat(in, n, m));
    const std::vector<double> flat = r.flat();
    std::copy(flat.begin(), flat.end(), out.begin());
  };
  return power_radius(gamma, n + m, tol, maxit);
}

double rhss_radius(const SaddlePointSystem& sys, double alpha, double tol,
                   int maxit) {
  const PrecondContext ctx = build_precond(sys, PrecondKind::rhss, alpha);
  const index_t n = sys.n();
  const index_t m = sys.m();
  const LinOp gamma = [&](std::span<const double> in, std::span<double> out) {
    const BlockVector u = BlockVector::from_flat(in, n, m);
    BlockVector r = apply_rhss(ctx, apply_saddle(sys, u));
    scal(-1.0, r);
    axpy(1.0, u, r);
    const std::vector<double> flat = r.flat();
    std::copy(flat.begin(), flat.end(), out.begin());
  };
  return power_radius(gamma, n + m, tol, maxit);
}

}  // namespace sadpre
