// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "sadpre/precond.hpp"
#include "sadpre/system.hpp"

namespace sadpre {

// Convergence theory for the stationary REHSS iteration
//   P_rehss u^{k+1} = R_rehss u^k + b,   Gamma = I - P_rehss^{-1} A_blk,
// and the RHSS parameter bounds. The iteration contracts whenever
// alpha > max{delta, 0} with delta = lambda_max(Q), Q = B (A^{-1}/2 - I) Bt;
// a coarser sufficient condition is lambda_min(A) > kappa(B)^2 / 2. The RHSS
// stationary iteration contracts iff 0 < alpha < 2/mu_1 with the optimum at
// 2/(mu_1 + mu_m), where mu_* are the extreme eigenvalues of
// (B Bt)^{-1} (B A^{-1} Bt).

struct ConvergenceBounds {
  double delta = 0.0;  // lambda_max(Q)
  double theta = 0.0;  // sigma_max(B)^2 / (2 lambda_min(A)) - sigma_min(B)^2
  double lambda_min_A = 0.0;
  double lambda_max_A = 0.0;
  double sigma_min_B = 0.0;
  double sigma_max_B = 0.0;
  double mu1 = 0.0;  // largest eigenvalue of (B Bt)^{-1} (B A^{-1} Bt)
  double mu_m = 0.0;
  double alpha_opt_rhss = 0.0;  // 2 / (mu1 + mu_m)
  double rhss_upper = 0.0;      // 2 / mu1
  bool corollary_holds = false;
};

/// Dense desk-scale computation of every bound above (guard: n + m <= 2000).
ConvergenceBounds compute_bounds(const SaddlePointSystem& sys);

/// Gamma u = u - P_rehss^{-1} (A_blk u) without assembling Gamma.
BlockVector gamma_action(const SaddlePointSystem& sys, const PrecondContext& ctx,
                         const BlockVector& u);

struct IterationReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> error_history;  // residual norms, length iterations+1
  double rho_estimate = 0.0;          // tail contraction rate
};

/// Stationary iteration u <- u + P_rehss^{-1}(b - A_blk u) on the system's
/// current right-hand side. Stops at ||b - A u|| <= tol ||b||; throws
/// Diverged once the residual exceeds 1e6 times its start value.
std::pair<BlockVector, IterationReport> rehss_iterate(const SaddlePointSystem& sys,
                                                      double alpha,
                                                      const BlockVector& u0,
                                                      double tol, int maxit);

/// Power-method estimate of rho(Gamma_rehss) at the given alpha.
double spectral_radius_gamma(const SaddlePointSystem& sys, double alpha,
                             double tol = 1e-8, int maxit = 200000);

/// Power-method estimate of rho(I - P_rhss^{-1} A_blk).
double rhss_radius(const SaddlePointSystem& sys, double alpha, double tol = 1e-8,
                   int maxit = 200000);

// Desk-scale helpers shared with the spectral module.

/// Dense m x m product B A^{-1} Bt via m Cholesky solves with chol_A.
DenseMatrix schur_ainv_dense(const SaddlePointSystem& sys,
                             const CholeskyFactor& chol_A);

/// Eigenvalues of S^{-1} C for SPD S = L Lt and symmetric C, computed from
/// the congruent symmetric matrix L^{-1} C L^{-T} (all real by construction).
std::vector<double> congruence_eigs(const CholeskyFactor& chol_S,
                                    const DenseMatrix& c);

}  // namespace sadpre
