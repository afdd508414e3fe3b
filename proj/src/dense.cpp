// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sadpre/errors.hpp"
#include "sadpre/sparse.hpp"

namespace sadpre {

using kernels::index_t;

DenseMatrix DenseMatrix::identity(index_t n) {
  DenseMatrix m(n, n);
  for (index_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix to_dense(const SparseMatrix& s) {
  DenseMatrix d(s.nrows, s.ncols);
  for (index_t i = 0; i < s.nrows; ++i)
    for (index_t k = s.row_offsets[i]; k < s.row_offsets[i + 1]; ++k)
      d(i, s.col_indices[k]) = s.values[k];
  return d;
}

DenseMatrix dense_transpose(const DenseMatrix& m) {
  DenseMatrix t(m.ncols, m.nrows);
  for (index_t i = 0; i < m.nrows; ++i)
    for (index_t j = 0; j < m.ncols; ++j) t(j, i) = m(i, j);
  return t;
}

DenseMatrix dense_matmul(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.ncols != y.nrows) throw DimensionMismatch("dense_matmul shape");
  DenseMatrix r(x.nrows, y.ncols);
  for (index_t i = 0; i < x.nrows; ++i) {
    for (index_t k = 0; k < x.ncols; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      kernels::axpy(xik, y.row(k), r.row(i), y.ncols);
    }
  }
  return r;
}

std::vector<double> dense_matvec(const DenseMatrix& m, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(m.ncols))
    throw DimensionMismatch("dense_matvec shape");
  std::vector<double> y(m.nrows);
  for (index_t i = 0; i < m.nrows; ++i)
    y[i] = kernels::dot(m.row(i), x.data(), m.ncols);
  return y;
}

double frobenius_norm(const DenseMatrix& m) {
  return std::sqrt(kernels::dot(m.a.data(), m.a.data(), m.a.size()));
}

double max_abs(const DenseMatrix& m) {
  double r = 0.0;
  for (const double v : m.a) r = std::max(r, std::abs(v));
  return r;
}

double relative_asymmetry(const DenseMatrix& m) {
  if (m.nrows != m.ncols) throw Error("relative_asymmetry: matrix must be square");
  double worst = 0.0;
  for (index_t i = 0; i < m.nrows; ++i)
    for (index_t j = i + 1; j < m.ncols; ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  const double scale = max_abs(m);
  return scale == 0.0 ? 0.0 : worst / scale;
}

namespace {

double offdiag_frobenius(const DenseMatrix& a) {
  double s = 0.0;
  for (index_t i = 0; i < a.nrows; ++i)
    for (index_t j = 0; j < a.ncols; ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Cyclic Jacobi on a working copy. vt accumulates the rotations as rows, so
// row k of vt ends up being the eigenvector of values[k].
SymEig jacobi(DenseMatrix a) {
  const index_t n = a.nrows;
  DenseMatrix vt = DenseMatrix::identity(n);
  const double norm = frobenius_norm(a);
  const double stop = 1e-12 * norm;
  constexpr int kMaxSweeps = 100;

  if (norm > 0.0) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (offdiag_frobenius(a) <= stop) break;
      if (sweep == kMaxSweeps - 1)
        throw MaxitExceeded("jacobi eigensolver did not reach tolerance");
      for (index_t p = 0; p < n - 1; ++p) {
        for (index_t q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (std::abs(apq) <= 1e-300) {
            a(p, q) = a(q, p) = 0.0;
            continue;
          }
          const double theta = (a(p, p) - a(q, q)) / (2.0 * apq);
          const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const double app = a(p, p);
          const double aqq = a(q, q);
          // Rotate rows p,q then columns p,q; the 2x2 pivot block is set
          // analytically so a(p,q) is annihilated exactly.
          kernels::rot(a.row(p), a.row(q), c, s, n);
          for (index_t i = 0; i < n; ++i) {
            const double aip = a(i, p);
            const double aiq = a(i, q);
            a(i, p) = c * aip + s * aiq;
            a(i, q) = c * aiq - s * aip;
          }
          a(p, p) = app + t * apq;
          a(q, q) = aqq - t * apq;
          a(p, q) = a(q, p) = 0.0;
          kernels::rot(vt.row(p), vt.row(q), c, s, n);
        }
      }
    }
  }

  std::vector<index_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](index_t i, index_t j) { return a(i, i) < a(j, j); });

  SymEig out;
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (index_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (index_t i = 0; i < n; ++i) out.vectors(i, k) = vt(order[k], i);
  }
  return out;
}

void require_symmetric(const DenseMatrix& m) {
  if (m.nrows != m.ncols) throw Asymmetric("matrix is not square");
  if (relative_asymmetry(m) > 1e-12)
    throw Asymmetric("matrix is not symmetric to 1e-12 relative");
}

}  // namespace

std::vector<double> sym_eigs(const DenseMatrix& m) {
  require_symmetric(m);
  return jacobi(m).values;
}

SymEig sym_eigs_full(const DenseMatrix& m) {
  require_symmetric(m);
  return jacobi(m);
}

}  // namespace sadpre
