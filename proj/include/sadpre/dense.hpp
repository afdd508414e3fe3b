// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "sadpre/kernels.hpp"

namespace sadpre {

struct SparseMatrix;

/// Row-major dense matrix used by the desk-scale spectral routines.
struct DenseMatrix {
  kernels::index_t nrows = 0;
  kernels::index_t ncols = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  DenseMatrix(kernels::index_t r, kernels::index_t c)
      : nrows(r), ncols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(kernels::index_t i, kernels::index_t j) {
    return a[static_cast<std::size_t>(i) * ncols + j];
  }
  double operator()(kernels::index_t i, kernels::index_t j) const {
    return a[static_cast<std::size_t>(i) * ncols + j];
  }
  double* row(kernels::index_t i) { return a.data() + static_cast<std::size_t>(i) * ncols; }
  const double* row(kernels::index_t i) const {
    return a.data() + static_cast<std::size_t>(i) * ncols;
  }

  static DenseMatrix identity(kernels::index_t n);
};

DenseMatrix to_dense(const SparseMatrix& m);
DenseMatrix dense_transpose(const DenseMatrix& m);
DenseMatrix dense_matmul(const DenseMatrix& x, const DenseMatrix& y);
std::vector<double> dense_matvec(const DenseMatrix& m, std::span<const double> x);
double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);
double relative_asymmetry(const DenseMatrix& m);

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi
/// rotations. The sweep loop stops once the off-diagonal Frobenius norm
/// falls below 1e-12 * ||M||_F. Throws Asymmetric for nonsymmetric input.
std::vector<double> sym_eigs(const DenseMatrix& m);

struct SymEig {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column j pairs with values[j]
};

SymEig sym_eigs_full(const DenseMatrix& m);

}  // namespace sadpre
