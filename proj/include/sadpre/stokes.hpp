// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sadpre/system.hpp"

namespace sadpre {

/// Desk-scale Stokes model problems on a staggered (MAC) N x N grid over
/// [-1,1]^2: A is the pair of scaled 5-point Dirichlet Laplacians acting
/// on the interior u- and v-velocity unknowns (n = 2N(N-1)) and B is the
/// discrete divergence (m = N^2 - drop_rows). The full pressure space
/// carries the constant nullvector, so one leading row is dropped by
/// default to restore full row rank.
struct StokesSpec {
  enum class Flow { lid_driven, channel, colliding };
  index_t cells_per_side = 16;  // N >= 4
  Flow flow = Flow::lid_driven;
  index_t drop_rows = 1;  // 0, 1 or 2 leading pressure rows removed
};

std::string to_string(StokesSpec::Flow f);
StokesSpec::Flow flow_from_string(const std::string& s);

/// Assembles the blocks without validating; the physical boundary data is
/// folded into (f, g). Only used directly by tests that need the unrepaired
/// rank-deficient divergence.
SaddlePointSystem assemble_stokes(const StokesSpec& spec);

/// assemble_stokes plus validation. Throws RankRepairFailed when B Bt is
/// still rank deficient after dropping spec.drop_rows rows.
SaddlePointSystem generate_stokes(const StokesSpec& spec);

}  // namespace sadpre
