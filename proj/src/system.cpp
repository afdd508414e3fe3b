// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/system.hpp"

#include <cmath>

#include "sadpre/cholesky.hpp"
#include "sadpre/errors.hpp"

namespace sadpre {

std::vector<double> BlockVector::flat() const {
  std::vector<double> v;
  v.reserve(size());
  v.insert(v.end(), x.begin(), x.end());
  v.insert(v.end(), y.begin(), y.end());
  return v;
}

BlockVector BlockVector::from_flat(std::span<const double> v, index_t n, index_t m) {
  if (v.size() != static_cast<std::size_t>(n) + static_cast<std::size_t>(m))
    throw DimensionMismatch("BlockVector::from_flat: length mismatch");
  BlockVector b;
  b.x.assign(v.begin(), v.begin() + n);
  b.y.assign(v.begin() + n, v.end());
  return b;
}

double dot(const BlockVector& a, const BlockVector& b) {
  if (a.x.size() != b.x.size() || a.y.size() != b.y.size())
    throw DimensionMismatch("BlockVector dot: shape mismatch");
  return kernels::dot(a.x.data(), b.x.data(), a.x.size()) +
         kernels::dot(a.y.data(), b.y.data(), a.y.size());
}

double norm2(const BlockVector& v) { return std::sqrt(dot(v, v)); }

void axpy(double a, const BlockVector& x, BlockVector& y) {
  if (x.x.size() != y.x.size() || x.y.size() != y.y.size())
    throw DimensionMismatch("BlockVector axpy: shape mismatch");
  kernels::axpy(a, x.x.data(), y.x.data(), x.x.size());
  kernels::axpy(a, x.y.data(), y.y.data(), x.y.size());
}

void scal(double a, BlockVector& v) {
  kernels::scal(a, v.x.data(), v.x.size());
  kernels::scal(a, v.y.data(), v.y.size());
}

BlockVector operator-(const BlockVector& a, const BlockVector& b) {
  BlockVector r = a;
  axpy(-1.0, b, r);
  return r;
}

BlockVector apply_saddle(const SaddlePointSystem& sys, const BlockVector& u) {
  if (u.x.size() != static_cast<std::size_t>(sys.n()) ||
      u.y.size() != static_cast<std::size_t>(sys.m()))
    throw DimensionMismatch("apply_saddle: block sizes do not match system");
  BlockVector r;
  r.x = spmv(sys.A, u.x);
  const std::vector<double> bty = spmv_t(sys.B, u.y);
  kernels::axpy(1.0, bty.data(), r.x.data(), r.x.size());
  r.y = spmv(sys.B, u.x);
  kernels::scal(-1.0, r.y.data(), r.y.size());
  return r;
}

bool ValidationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string ValidationReport::summary() const {
  std::string s;
  for (const auto& c : checks) {
    s += c.name;
    s += c.passed ? ": pass" : ": FAIL";
    if (!c.detail.empty()) {
      s += " (";
      s += c.detail;
      s += ")";
    }
    s += "\n";
  }
  return s;
}

ValidationReport validate(const SaddlePointSystem& sys) {
  ValidationReport rep;

  ValidationCheck shape{"shape", true, ""};
  if (!sys.A.square()) {
    shape.passed = false;
    shape.detail = "A is not square";
  } else if (sys.B.ncols != sys.A.nrows) {
    shape.passed = false;
    shape.detail = "B has " + std::to_string(sys.B.ncols) +
                   " columns, expected " + std::to_string(sys.A.nrows);
  } else if (sys.B.nrows > sys.A.nrows) {
    shape.passed = false;
    shape.detail = "m <= n violated";
  } else if (sys.f.size() != static_cast<std::size_t>(sys.A.nrows) ||
             sys.g.size() != static_cast<std::size_t>(sys.B.nrows)) {
    shape.passed = false;
    shape.detail = "rhs lengths do not match blocks";
  }
  rep.checks.push_back(shape);

  ValidationCheck spd{"A symmetric positive definite", false, ""};
  if (shape.passed) {
    try {
      cholesky(sys.A, "A");
      spd.passed = true;
    } catch (const Error& e) {
      spd.detail = e.what();
    }
  } else {
    spd.detail = "skipped: shape check failed";
  }
  rep.checks.push_back(spd);

  ValidationCheck rank{"B full row rank (B*Bt SPD)", false, ""};
  if (shape.passed) {
    try {
      cholesky(gram(sys.B), "BBt");
      rank.passed = true;
    } catch (const Error& e) {
      rank.detail = e.what();
    }
  } else {
    rank.detail = "skipped: shape check failed";
  }
  rep.checks.push_back(rank);

  return rep;
}

BlockVector rhs_all_ones(SaddlePointSystem& sys) {
  BlockVector ones(sys.n(), sys.m());
  for (double& v : ones.x) v = 1.0;
  for (double& v : ones.y) v = 1.0;
  BlockVector b = apply_saddle(sys, ones);
  sys.f = b.x;
  sys.g = b.y;
  return b;
}

}  // namespace sadpre
