// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sadpre/precond.hpp"
#include "sadpre/system.hpp"

namespace sadpre {

/// Desk-scale eigenvalue study of a (preconditioned) saddle operator.
struct SpectrumReport {
  std::string label;
  double alpha = 0.0;
  std::vector<double> eigenvalues_real;
  std::vector<double> eigenvalues_imag;
  index_t n_at_one = 0;          // eigenvalues with |lambda - 1| <= 1e-8
  double cluster_radius_90 = 0;  // 90th percentile of |lambda - 1|
  double min_real = 0.0;
  double max_real = 0.0;
};

/// Eigenvalues of all real matrices: balance, Householder reduction to upper
/// Hessenberg, then implicit double-shift QR. Returns (real, imag) parts
/// sorted by real part then imaginary part. Throws MaxitExceeded if a block
/// refuses to deflate.
std::pair<std::vector<double>, std::vector<double>> hqr_eigenvalues(DenseMatrix a);

/// Eigenvalues of Ahat = (alpha I + B Bt)^{-1} B A^{-1} Bt, ascending; all
/// real and positive, computed through a symmetric congruence.
/// Guard: n + m <= 2000.
std::vector<double> ahat_eigs(const SaddlePointSystem& sys, double alpha);

/// Spectrum of the preconditioned operator P^{-1} A_blk. For REHSS this is
/// the exact structural union {1 (n-fold)} and eig(Ahat); for the other
/// kinds the operator is assembled densely column by column and fed to the
/// general eigensolver (guard: n + m <= 800).
SpectrumReport preconditioned_spectrum(const SaddlePointSystem& sys,
                                       const PrecondContext& ctx);

struct MinpolyResult {
  long iterations = 0;  // inner GMRES iterations to reach tol
  long bound = 0;       // m + 1
  bool pass = false;
};

/// Full (unrestarted) GMRES with the REHSS preconditioner and direct inner
/// solves must reach tol within m+1 iterations.
MinpolyResult minpoly_check(const SaddlePointSystem& sys, double alpha,
                            double tol = 1e-10);

struct AlphaLimitRow {
  double alpha = 0.0;
  double min_nonunit = 0.0;  // smallest eigenvalue of Ahat
  double max_nonunit = 0.0;  // largest eigenvalue of Ahat
  double lo_bound = 0.0;     // 1 / lambda_max(A)
  double hi_bound = 0.0;     // 1 / lambda_min(A)
};

/// For each alpha, the extreme nonunit eigenvalues next to the limiting
/// interval [1/lambda_max(A), 1/lambda_min(A)] they enter as alpha -> 0.
std::vector<AlphaLimitRow> alpha_limit_study(const SaddlePointSystem& sys,
                                             std::span<const double> alphas);

/// Plain-text scatter: header "# <label> alpha=<value>" then one "re im"
/// line per eigenvalue.
void write_scatter(const SpectrumReport& report, const std::filesystem::path& path);

/// Dense assembly of v -> apply(v) by probing unit vectors; test/verification
/// helper for desk-scale operators.
DenseMatrix operator_to_dense(const std::function<BlockVector(const BlockVector&)>& op,
                              index_t n, index_t m);

}  // namespace sadpre
