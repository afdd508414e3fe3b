// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "sadpre/dense.hpp"
#include "sadpre/errors.hpp"

namespace sadpre {

double SparseMatrix::at(index_t i, index_t j) const {
  const auto begin = col_indices.begin() + row_offsets[i];
  const auto end = col_indices.begin() + row_offsets[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values[static_cast<std::size_t>(it - col_indices.begin())];
}

void SparseMatrix::check_invariants() const {
  if (nrows < 0 || ncols < 0) throw Error("negative dimensions");
  if (row_offsets.size() != static_cast<std::size_t>(nrows) + 1)
    throw Error("row_offsets has wrong length");
  if (row_offsets.front() != 0) throw Error("row_offsets[0] must be 0");
  if (row_offsets.back() != nnz() ||
      col_indices.size() != values.size())
    throw Error("row_offsets[nrows] must equal nnz");
  for (index_t i = 0; i < nrows; ++i) {
    if (row_offsets[i] > row_offsets[i + 1])
      throw Error("row_offsets must be nondecreasing");
    for (index_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
      if (col_indices[k] < 0 || col_indices[k] >= ncols)
        throw Error("column index out of range");
      if (k > row_offsets[i] && col_indices[k] <= col_indices[k - 1])
        throw Error("column indices must be strictly increasing within a row");
    }
  }
}

SparseMatrix SparseMatrix::identity(index_t n) {
  SparseMatrix m;
  m.nrows = m.ncols = n;
  m.row_offsets.resize(n + 1);
  m.col_indices.resize(n);
  m.values.assign(n, 1.0);
  for (index_t i = 0; i <= n; ++i) m.row_offsets[i] = i;
  for (index_t i = 0; i < n; ++i) m.col_indices[i] = i;
  return m;
}

SparseMatrix SparseMatrix::from_triplets(
    index_t nrows, index_t ncols,
    std::vector<std::tuple<index_t, index_t, double>> triplets) {
  for (const auto& [i, j, v] : triplets) {
    (void)v;
    if (i < 0 || i >= nrows || j < 0 || j >= ncols)
      throw Error("triplet index out of range");
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const auto& a, const auto& b) {
              return std::tie(std::get<0>(a), std::get<1>(a)) <
                     std::tie(std::get<0>(b), std::get<1>(b));
            });
  for (std::size_t k = 1; k < triplets.size(); ++k) {
    if (std::get<0>(triplets[k]) == std::get<0>(triplets[k - 1]) &&
        std::get<1>(triplets[k]) == std::get<1>(triplets[k - 1]))
      throw Error("duplicate entry in triplet list");
  }
  SparseMatrix m;
  m.nrows = nrows;
  m.ncols = ncols;
  m.row_offsets.assign(nrows + 1, 0);
  m.col_indices.resize(triplets.size());
  m.values.resize(triplets.size());
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    m.col_indices[k] = std::get<1>(triplets[k]);
    m.values[k] = std::get<2>(triplets[k]);
    ++m.row_offsets[std::get<0>(triplets[k]) + 1];
  }
  for (index_t i = 0; i < nrows; ++i) m.row_offsets[i + 1] += m.row_offsets[i];
  return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& d, double drop_tol) {
  std::vector<std::tuple<index_t, index_t, double>> t;
  for (index_t i = 0; i < d.nrows; ++i)
    for (index_t j = 0; j < d.ncols; ++j)
      if (std::abs(d(i, j)) > drop_tol) t.emplace_back(i, j, d(i, j));
  return from_triplets(d.nrows, d.ncols, std::move(t));
}

std::vector<double> spmv(const SparseMatrix& m, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(m.ncols))
    throw DimensionMismatch("spmv: vector length does not match ncols");
  std::vector<double> y(m.nrows);
  kernels::csr_spmv(m.nrows, m.row_offsets.data(), m.col_indices.data(),
                    m.values.data(), x.data(), y.data());
  return y;
}

std::vector<double> spmv_t(const SparseMatrix& m, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(m.nrows))
    throw DimensionMismatch("spmv_t: vector length does not match nrows");
  std::vector<double> y(m.ncols, 0.0);
  for (index_t i = 0; i < m.nrows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (index_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k)
      y[m.col_indices[k]] += m.values[k] * xi;
  }
  return y;
}

SparseMatrix gram(const SparseMatrix& b) {
  // Gustavson product B * Bᵀ with rows of Bᵀ looked up through a transpose
  // copy. For a fixed (i,j) both c_ij and c_ji accumulate the same terms in
  // the same ascending-k order, so the result is bitwise symmetric.
  const SparseMatrix bt = transpose(b);
  const index_t m = b.nrows;
  std::vector<double> acc(m, 0.0);
  std::vector<index_t> marker(m, -1);
  std::vector<index_t> cols;

  SparseMatrix c;
  c.nrows = c.ncols = m;
  c.row_offsets.assign(m + 1, 0);
  for (index_t i = 0; i < m; ++i) {
    cols.clear();
    for (index_t kb = b.row_offsets[i]; kb < b.row_offsets[i + 1]; ++kb) {
      const index_t k = b.col_indices[kb];
      const double bik = b.values[kb];
      for (index_t kt = bt.row_offsets[k]; kt < bt.row_offsets[k + 1]; ++kt) {
        const index_t j = bt.col_indices[kt];
        if (marker[j] != i) {
          marker[j] = i;
          acc[j] = 0.0;
          cols.push_back(j);
        }
        acc[j] += bik * bt.values[kt];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (const index_t j : cols) {
      c.col_indices.push_back(j);
      c.values.push_back(acc[j]);
    }
    c.row_offsets[i + 1] = static_cast<index_t>(c.col_indices.size());
  }
  return c;
}

SparseMatrix shift_diag(const SparseMatrix& m, double alpha) {
  if (!m.square()) throw Error("shift_diag: matrix must be square");
  SparseMatrix r;
  r.nrows = r.ncols = m.nrows;
  r.row_offsets.assign(m.nrows + 1, 0);
  r.col_indices.reserve(m.nnz() + m.nrows);
  r.values.reserve(m.nnz() + m.nrows);
  for (index_t i = 0; i < m.nrows; ++i) {
    bool diag_done = false;
    for (index_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
      const index_t j = m.col_indices[k];
      if (!diag_done && j > i) {
        r.col_indices.push_back(i);
        r.values.push_back(alpha);
        diag_done = true;
      }
      r.col_indices.push_back(j);
      r.values.push_back(j == i ? m.values[k] + alpha : m.values[k]);
      if (j == i) diag_done = true;
    }
    if (!diag_done) {
      r.col_indices.push_back(i);
      r.values.push_back(alpha);
    }
    r.row_offsets[i + 1] = static_cast<index_t>(r.col_indices.size());
  }
  return r;
}

SparseMatrix transpose(const SparseMatrix& m) {
  SparseMatrix t;
  t.nrows = m.ncols;
  t.ncols = m.nrows;
  t.row_offsets.assign(m.ncols + 1, 0);
  t.col_indices.resize(m.values.size());
  t.values.resize(m.values.size());
  for (const index_t j : m.col_indices) ++t.row_offsets[j + 1];
  for (index_t j = 0; j < m.ncols; ++j) t.row_offsets[j + 1] += t.row_offsets[j];
  std::vector<index_t> next(t.row_offsets.begin(), t.row_offsets.end() - 1);
  for (index_t i = 0; i < m.nrows; ++i) {
    for (index_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
      const index_t pos = next[m.col_indices[k]]++;
      t.col_indices[pos] = i;
      t.values[pos] = m.values[k];
    }
  }
  return t;
}

SparseMatrix drop_leading_rows(const SparseMatrix& m, index_t count) {
  if (count < 0 || count > m.nrows)
    throw Error("drop_leading_rows: count out of range");
  SparseMatrix r;
  r.nrows = m.nrows - count;
  r.ncols = m.ncols;
  const index_t shift = m.row_offsets[count];
  r.row_offsets.resize(r.nrows + 1);
  for (index_t i = 0; i <= r.nrows; ++i)
    r.row_offsets[i] = m.row_offsets[i + count] - shift;
  r.col_indices.assign(m.col_indices.begin() + shift, m.col_indices.end());
  r.values.assign(m.values.begin() + shift, m.values.end());
  return r;
}

double max_abs(const SparseMatrix& m) {
  double r = 0.0;
  for (const double v : m.values) r = std::max(r, std::abs(v));
  return r;
}

double relative_asymmetry(const SparseMatrix& m) {
  if (!m.square()) throw Error("relative_asymmetry: matrix must be square");
  const SparseMatrix t = transpose(m);
  double worst = 0.0;
  for (index_t i = 0; i < m.nrows; ++i) {
    index_t ka = m.row_offsets[i];
    index_t kb = t.row_offsets[i];
    const index_t ea = m.row_offsets[i + 1];
    const index_t eb = t.row_offsets[i + 1];
    while (ka < ea || kb < eb) {
      if (kb >= eb || (ka < ea && m.col_indices[ka] < t.col_indices[kb])) {
        worst = std::max(worst, std::abs(m.values[ka++]));
      } else if (ka >= ea || t.col_indices[kb] < m.col_indices[ka]) {
        worst = std::max(worst, std::abs(t.values[kb++]));
      } else {
        worst = std::max(worst, std::abs(m.values[ka++] - t.values[kb++]));
      }
    }
  }
  const double scale = max_abs(m);
  return scale == 0.0 ? 0.0 : worst / scale;
}

}  // namespace sadpre
