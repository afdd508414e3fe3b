// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sadpre/cg.hpp"
#include "sadpre/kernels.hpp"

namespace sadpre {

/// Power-method estimate of the dominant eigenvalue magnitude rho(T).
///
/// The iterate is renormalised every step; the estimate is the geometric
/// mean of the last two growth factors ||T v||, which also converges when
/// the dominant eigenvalues form a +/-rho pair (where a plain Rayleigh
/// quotient stalls on a wrong value). Convergence is declared once two
/// successive estimates differ by less than tol relatively.
///
/// The start vector is deterministic: all ones perturbed by index-dependent
/// 1e-3 offsets, normalised. If the iterate collapses to (numerical) zero
/// the dominant action is nilpotent and 0 is returned. Throws MaxitExceeded
/// when maxit runs out first.
double power_radius(const LinOp& apply_t, index_t dim, double tol, int maxit);

}  // namespace sadpre
