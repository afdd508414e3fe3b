// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sadpre {

/// y = M x for an abstract operator; callee writes into y (same length as x).
using LinOp = std::function<void(std::span<const double>, std::span<double>)>;

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double relres = 0.0;
};

/// Plain conjugate gradients from a zero initial guess.
/// Stops when ||r - M x||_2 <= tol * ||r||_2; throws MaxitExceeded when the
/// budget runs out and BreakdownNonSpd on nonpositive curvature.
CgResult cg_solve(const LinOp& apply_m, std::span<const double> r, double tol,
                  int maxit);

}  // namespace sadpre
