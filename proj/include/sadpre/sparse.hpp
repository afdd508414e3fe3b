// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "sadpre/kernels.hpp"

namespace sadpre {

struct DenseMatrix;

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row; duplicates are rejected at construction. Explicitly
/// stored zeros are allowed.
struct SparseMatrix {
  index_t nrows = 0;
  index_t ncols = 0;
  std::vector<index_t> row_offsets;  // length nrows+1, row_offsets[0] == 0
  std::vector<index_t> col_indices;  // length nnz
  std::vector<double> values;        // length nnz

  SparseMatrix() : row_offsets(1, 0) {}

  index_t nnz() const { return static_cast<index_t>(values.size()); }
  bool square() const { return nrows == ncols; }

  /// Entry lookup by binary search; absent entries read as zero.
  double at(index_t i, index_t j) const;

  /// Throws if the CSR invariants are violated.
  void check_invariants() const;

  static SparseMatrix identity(index_t n);
  static SparseMatrix from_triplets(
      index_t nrows, index_t ncols,
      std::vector<std::tuple<index_t, index_t, double>> triplets);
  static SparseMatrix from_dense(const DenseMatrix& d, double drop_tol = 0.0);
};

std::vector<double> spmv(const SparseMatrix& m, std::span<const double> x);
std::vector<double> spmv_t(const SparseMatrix& m, std::span<const double> x);

/// B Bᵀ, stored sparse. Pattern and values are symmetric by construction
/// (both triangles are accumulated in the same index order).
SparseMatrix gram(const SparseMatrix& b);

/// alpha*I + M for square M.
SparseMatrix shift_diag(const SparseMatrix& m, double alpha);

SparseMatrix transpose(const SparseMatrix& m);

/// Drops the first `count` rows.
SparseMatrix drop_leading_rows(const SparseMatrix& m, index_t count);

double max_abs(const SparseMatrix& m);

/// max_ij |M - Mᵀ| / max_ij |M| (0 for the zero matrix).
double relative_asymmetry(const SparseMatrix& m);

}  // namespace sadpre
