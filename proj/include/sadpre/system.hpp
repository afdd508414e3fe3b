// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "sadpre/sparse.hpp"

namespace sadpre {

/// Block vector (x, y) matching the (n, m) split of a SaddlePointSystem.
/// Concatenation order is always x then y, also for file I/O.
struct BlockVector {
  std::vector<double> x;
  std::vector<double> y;

  BlockVector() = default;
  BlockVector(index_t n, index_t m) : x(n, 0.0), y(m, 0.0) {}

  std::size_t size() const { return x.size() + y.size(); }

  std::vector<double> flat() const;
  static BlockVector from_flat(std::span<const double> v, index_t n, index_t m);
};

double dot(const BlockVector& a, const BlockVector& b);
double norm2(const BlockVector& v);
/// y += a * x
void axpy(double a, const BlockVector& x, BlockVector& y);
void scal(double a, BlockVector& v);
BlockVector operator-(const BlockVector& a, const BlockVector& b);

/// The block system [[A, Bᵀ], [-B, 0]] (x; y) = (f; g) with SPD A (n x n)
/// and full-row-rank B (m x n), m < n.
struct SaddlePointSystem {
  SparseMatrix A;
  SparseMatrix B;
  std::vector<double> f;
  std::vector<double> g;
  std::string label;

  index_t n() const { return A.nrows; }
  index_t m() const { return B.nrows; }
  BlockVector rhs() const {
    BlockVector b;
    b.x = f;
    b.y = g;
    return b;
  }
};

/// (A x + Bᵀ y, -B x)
BlockVector apply_saddle(const SaddlePointSystem& sys, const BlockVector& u);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
  std::string summary() const;
};

/// Runs the shape check, the SPD-of-A check (Cholesky succeeds) and the
/// full-row-rank check on B (Cholesky of B Bᵀ succeeds). Failures are
/// reported, not thrown.
ValidationReport validate(const SaddlePointSystem& sys);

/// Overwrites (f, g) with b = [[A,Bᵀ],[-B,0]] * ones and returns b, so the
/// exact solution of the system becomes the all-ones vector.
BlockVector rhs_all_ones(SaddlePointSystem& sys);

}  // namespace sadpre
