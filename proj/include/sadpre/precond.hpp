// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "sadpre/cholesky.hpp"
#include "sadpre/system.hpp"

namespace sadpre {

// The three preconditioners, as block matrices:
//
//   P_hss   = (1/a) (aI + H)(aI + S) = [[A+aI, Bt + (1/a) A Bt], [-B, aI]]
//   P_rhss  = [[A, (1/a) A Bt], [-B,  0]]
//   P_rehss = [[A,       A Bt], [-B, aI]]
//
// with H = [[A,0],[0,0]], S = [[0,Bt],[-B,0]]. Applying any of them costs two
// SPD sub-solves, done either by a cached Cholesky factorization or by CG.

enum class PrecondKind { none, hss, rhss, rehss };

std::string to_string(PrecondKind k);
PrecondKind precond_kind_from_string(const std::string& s);

struct InnerStrategy {
  enum class Mode { direct, cg };
  Mode mode = Mode::direct;
  double cg_tol = 1e-13;  // must lie in (0, 1e-6]
  int cg_maxit = 0;       // 0 means 2 * dim of the sub-system
};

/// A built preconditioner: the factorizations (direct mode) or assembled
/// Schur matrices (cg mode) needed by `kind`, nothing else. Holds a
/// non-owning pointer to the system, which must outlive the context.
struct PrecondContext {
  PrecondKind kind = PrecondKind::none;
  double alpha = 0.0;
  const SaddlePointSystem* sys = nullptr;
  InnerStrategy inner;

  std::optional<CholeskyFactor> chol_A;          // RHSS, REHSS
  std::optional<CholeskyFactor> chol_A_shift;    // HSS: A + aI
  std::optional<CholeskyFactor> chol_S;          // REHSS: aI + B Bt
  std::optional<CholeskyFactor> chol_BBt;        // RHSS: B Bt
  std::optional<CholeskyFactor> chol_hss_schur;  // HSS: a^2 I + B Bt

  // Assembled SPD sub-matrices, kept for the CG inner mode.
  SparseMatrix A_shift, S_rehss, BBt, hss_schur;
};

PrecondContext build_precond(const SaddlePointSystem& sys, PrecondKind kind,
                             double alpha, InnerStrategy inner = {});

/// z = P⁻¹ r for the respective preconditioner. apply_precond dispatches on
/// ctx.kind; kind none is the identity.
BlockVector apply_rehss(const PrecondContext& ctx, const BlockVector& r);
BlockVector apply_rhss(const PrecondContext& ctx, const BlockVector& r);
BlockVector apply_hss(const PrecondContext& ctx, const BlockVector& r);
BlockVector apply_precond(const PrecondContext& ctx, const BlockVector& r);

/// z = P r (the forward product), used by the literal stopping rule.
BlockVector apply_precond_forward(const PrecondContext& ctx, const BlockVector& r);

}  // namespace sadpre
