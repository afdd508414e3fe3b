// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/cholesky.hpp"

#include <algorithm>
#include <cmath>

#include "sadpre/errors.hpp"
#include "sadpre/kernels.hpp"

namespace sadpre {

DenseMatrix CholeskyFactor::lower_dense() const {
  DenseMatrix l(dim, dim);
  for (index_t i = 0; i < dim; ++i) {
    const index_t f = env_start[i];
    for (index_t j = f; j <= i; ++j) l(i, j) = packed[offsets[i] + (j - f)];
  }
  return l;
}

CholeskyFactor cholesky(const SparseMatrix& m, std::string tag) {
  if (!m.square()) throw Asymmetric("cholesky: matrix must be square");
  if (relative_asymmetry(m) > 1e-12)
    throw Asymmetric("cholesky: matrix is not symmetric to 1e-12 relative");

  const index_t n = m.nrows;
  double max_diag = 0.0;
  for (index_t i = 0; i < n; ++i) max_diag = std::max(max_diag, m.at(i, i));
  const double pivot_floor = 1e-14 * max_diag;

  CholeskyFactor f;
  f.dim = n;
  f.source_tag = std::move(tag);
  f.env_start.resize(n);
  f.offsets.resize(n + 1);
  f.offsets[0] = 0;
  for (index_t i = 0; i < n; ++i) {
    index_t first = i;
    if (m.row_offsets[i] < m.row_offsets[i + 1])
      first = std::min(first, m.col_indices[m.row_offsets[i]]);
    f.env_start[i] = first;
    f.offsets[i + 1] = f.offsets[i] + (i - first + 1);
  }
  f.packed.assign(static_cast<std::size_t>(f.offsets[n]), 0.0);

  for (index_t i = 0; i < n; ++i) {
    const index_t fi = f.env_start[i];
    double* row_i = f.packed.data() + f.offsets[i];
    for (index_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
      const index_t j = m.col_indices[k];
      if (j > i) break;
      row_i[j - fi] = m.values[k];
    }
    for (index_t j = fi; j < i; ++j) {
      const index_t fj = f.env_start[j];
      const index_t lo = std::max(fi, fj);
      const double* row_j = f.packed.data() + f.offsets[j];
      const double s = kernels::dot(row_i + (lo - fi), row_j + (lo - fj),
                                    static_cast<std::size_t>(j - lo));
      row_i[j - fi] = (row_i[j - fi] - s) / row_j[j - fj];
    }
    const double sq = kernels::dot(row_i, row_i, static_cast<std::size_t>(i - fi));
    const double d = row_i[i - fi] - sq;
    if (d <= pivot_floor)
      throw NotSpd("cholesky: pivot " + std::to_string(d) + " at row " +
                   std::to_string(i) + " is at or below the pivot floor");
    row_i[i - fi] = std::sqrt(d);
  }
  return f;
}

std::vector<double> solve_lower(const CholeskyFactor& f, std::span<const double> r) {
  if (r.size() != static_cast<std::size_t>(f.dim))
    throw DimensionMismatch("solve_lower: vector length does not match factor");
  std::vector<double> x(r.begin(), r.end());
  for (index_t i = 0; i < f.dim; ++i) {
    const index_t fi = f.env_start[i];
    const double* row_i = f.packed.data() + f.offsets[i];
    const double s =
        kernels::dot(row_i, x.data() + fi, static_cast<std::size_t>(i - fi));
    x[i] = (x[i] - s) / row_i[i - fi];
  }
  return x;
}

std::vector<double> solve_chol(const CholeskyFactor& f, std::span<const double> r) {
  if (r.size() != static_cast<std::size_t>(f.dim))
    throw DimensionMismatch("solve_chol: vector length does not match factor");
  std::vector<double> x(r.begin(), r.end());
  // L y = r
  for (index_t i = 0; i < f.dim; ++i) {
    const index_t fi = f.env_start[i];
    const double* row_i = f.packed.data() + f.offsets[i];
    const double s =
        kernels::dot(row_i, x.data() + fi, static_cast<std::size_t>(i - fi));
    x[i] = (x[i] - s) / row_i[i - fi];
  }
  // Lᵀ x = y
  for (index_t i = f.dim; i-- > 0;) {
    const index_t fi = f.env_start[i];
    const double* row_i = f.packed.data() + f.offsets[i];
    x[i] /= row_i[i - fi];
    kernels::axpy(-x[i], row_i, x.data() + fi, static_cast<std::size_t>(i - fi));
  }
  return x;
}

}  // namespace sadpre
