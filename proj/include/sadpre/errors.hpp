// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sadpre {

/// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A Cholesky pivot fell at or below the pivot floor.
class NotSpd : public Error {
 public:
  using Error::Error;
};

/// A matrix required to be symmetric failed the relative-asymmetry check.
class Asymmetric : public Error {
 public:
  using Error::Error;
};

/// An iteration ran out of its budget without converging.
class MaxitExceeded : public Error {
 public:
  using Error::Error;
};

/// CG detected nonpositive curvature, i.e. the operator is not SPD.
class BreakdownNonSpd : public Error {
 public:
  using Error::Error;
};

class InvalidAlpha : public Error {
 public:
  using Error::Error;
};

/// A dense verification path was asked to exceed its size guard.
class DenseLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Stationary iteration residual grew past the divergence threshold.
class Diverged : public Error {
 public:
  using Error::Error;
};

class RankRepairFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class UnsupportedField : public Error {
 public:
  using Error::Error;
};

}  // namespace sadpre
