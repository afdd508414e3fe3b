// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sadpre/dense.hpp"
#include "sadpre/sparse.hpp"

namespace sadpre {

/// Lower-triangular Cholesky factor stored by rows in envelope (skyline)
/// form: row i keeps the contiguous range [env_start[i], i], diagonal last.
/// No fill-reducing ordering is applied (natural order), so the dense worst
/// case costs O(n^3) time and O(n^2) storage; the intended inputs are small
/// or banded.
struct CholeskyFactor {
  index_t dim = 0;
  std::vector<index_t> env_start;
  std::vector<std::int64_t> offsets;  // dim+1 offsets into packed
  std::vector<double> packed;
  std::string source_tag;

  double diag(index_t i) const { return packed[offsets[i + 1] - 1]; }

  /// Dense copy of L for desk-scale verification.
  DenseMatrix lower_dense() const;
};

/// Factor a symmetric positive definite sparse matrix as L Lᵀ.
/// Throws Asymmetric when the relative asymmetry exceeds 1e-12 and NotSpd
/// when a pivot falls at or below 1e-14 * max(diag).
CholeskyFactor cholesky(const SparseMatrix& m, std::string tag = "");

/// Solve (L Lᵀ) x = r.
std::vector<double> solve_chol(const CholeskyFactor& f, std::span<const double> r);

/// Solve L y = r (forward substitution only).
std::vector<double> solve_lower(const CholeskyFactor& f, std::span<const double> r);

}  // namespace sadpre
