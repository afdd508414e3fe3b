// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sadpre/precond.hpp"
#include "sadpre/system.hpp"

namespace sadpre {

struct GmresConfig {
  int restart = 30;
  double rel_tol = 1e-12;
  int max_restarts = 500;
  double max_seconds = 3600.0;
  bool record_history = true;
  // Stop on ||P r_k|| <= tol ||P b|| (forward product) instead of the
  // preconditioned residual ||P^{-1} r_k|| <= tol ||P^{-1} b||.
  bool literal_stop_rule = false;
};

enum class Termination { converged, max_restarts, timeout, breakdown };

std::string to_string(Termination t);

struct SolveReport {
  bool converged = false;
  int restarts = 0;  // "IT": number of cycles that performed work
  long total_inner_iterations = 0;
  double final_relres = 0.0;
  double wall_seconds = 0.0;
  // Relative preconditioned residual norms, one entry at each cycle start
  // and one per inner iteration; nonincreasing within a cycle.
  std::vector<double> residual_history;
  std::vector<std::size_t> cycle_starts;  // history index of each cycle start
  Termination termination = Termination::breakdown;
};

using BlockOp = std::function<BlockVector(const BlockVector&)>;

/// Restarted GMRES with left preconditioning for op(u) = b. Arnoldi with
/// modified Gram-Schmidt (single pass) and Givens-rotation least squares.
/// ctx == nullptr or kind none runs unpreconditioned. The recurrence
/// residual drives the stopping test; the true residual is recomputed once
/// at acceptance and the run continues if it disagrees.
std::pair<BlockVector, SolveReport> gmres(const BlockOp& op,
                                          const PrecondContext* ctx,
                                          const BlockVector& b,
                                          const BlockVector& x0,
                                          const GmresConfig& cfg);

/// GMRES without restarting (restart = problem dimension), used for the
/// Krylov-dimension checks.
std::pair<BlockVector, SolveReport> gmres_full(const BlockOp& op,
                                               const PrecondContext* ctx,
                                               const BlockVector& b,
                                               const BlockVector& x0,
                                               double rel_tol);

}  // namespace sadpre
