// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/stokes.hpp"

#include <cmath>

#include "sadpre/errors.hpp"

namespace sadpre {

std::string to_string(StokesSpec::Flow f) {
  switch (f) {
    case StokesSpec::Flow::lid_driven:
      return "lid";
    case StokesSpec::Flow::channel:
      return "channel";
    case StokesSpec::Flow::colliding:
      return "colliding";
  }
  return "?";
}

StokesSpec::Flow flow_from_string(const std::string& s) {
  if (s == "lid" || s == "lid-driven" || s == "cavity")
    return StokesSpec::Flow::lid_driven;
  if (s == "channel") return StokesSpec::Flow::channel;
  if (s == "colliding") return StokesSpec::Flow::colliding;
  throw Error("unknown flow kind: " + s);
}

namespace {

struct Boundary {
  StokesSpec::Flow flow;

  double u(double x, double y) const {
    switch (flow) {
      case StokesSpec::Flow::lid_driven:
        return y >= 1.0 ? 1.0 : 0.0;  // leaky lid, corners included
      case StokesSpec::Flow::channel:
        return (x <= -1.0 || x >= 1.0) ? 1.0 - y * y : 0.0;
      case StokesSpec::Flow::colliding:
        return 20.0 * x * y * y * y;
    }
    return 0.0;
  }

  double v(double x, double y) const {
    switch (flow) {
      case StokesSpec::Flow::lid_driven:
      case StokesSpec::Flow::channel:
        return 0.0;
      case StokesSpec::Flow::colliding:
        return 5.0 * x * x * x * x - 5.0 * y * y * y * y;
    }
    return 0.0;
  }
};

}  // namespace

SaddlePointSystem assemble_stokes(const StokesSpec& spec) {
  const index_t N = spec.cells_per_side;
  if (N < 4) throw Error("generate_stokes: need at least 4 cells per side");
  if (spec.drop_rows < 0 || spec.drop_rows > 2)
    throw Error("generate_stokes: drop_rows must be 0, 1 or 2");

  const double h = 2.0 / N;
  const double ih2 = 1.0 / (h * h);
  const double ih = 1.0 / h;
  const index_t nu = N * (N - 1);  // u unknowns, same count for v
  const index_t n = 2 * nu;
  const index_t m_full = N * N;
  const Boundary bc{spec.flow};

  const auto xline = [&](index_t i) { return -1.0 + i * h; };        // grid line
  const auto center = [&](index_t c) { return -1.0 + (c + 0.5) * h; };
  const auto idx_u = [&](index_t i, index_t cj) { return cj * (N - 1) + (i - 1); };
  const auto idx_v = [&](index_t ci, index_t j) { return nu + (j - 1) * N + ci; };

  std::vector<std::tuple<index_t, index_t, double>> ta, tb;
  std::vector<double> f(n, 0.0), g_full(m_full, 0.0);

  // u-momentum rows: x-neighbours live on grid lines (Dirichlet values sit
  // on the boundary lines), y-walls are half a cell away and enter through
  // ghost elimination.
  for (index_t cj = 0; cj < N; ++cj) {
    for (index_t i = 1; i <= N - 1; ++i) {
      const index_t row = idx_u(i, cj);
      const double yc = center(cj);
      double diag = 4.0;
      if (i - 1 >= 1)
        ta.emplace_back(row, idx_u(i - 1, cj), -ih2);
      else
        f[row] += ih2 * bc.u(-1.0, yc);
      if (i + 1 <= N - 1)
        ta.emplace_back(row, idx_u(i + 1, cj), -ih2);
      else
        f[row] += ih2 * bc.u(1.0, yc);
      if (cj >= 1)
        ta.emplace_back(row, idx_u(i, cj - 1), -ih2);
      else {
        diag += 1.0;
        f[row] += 2.0 * ih2 * bc.u(xline(i), -1.0);
      }
      if (cj + 1 <= N - 1)
        ta.emplace_back(row, idx_u(i, cj + 1), -ih2);
      else {
        diag += 1.0;
        f[row] += 2.0 * ih2 * bc.u(xline(i), 1.0);
      }
      ta.emplace_back(row, row, diag * ih2);
    }
  }

  // v-momentum rows, mirrored.
  for (index_t j = 1; j <= N - 1; ++j) {
    for (index_t ci = 0; ci < N; ++ci) {
      const index_t row = idx_v(ci, j);
      const double xc = center(ci);
      double diag = 4.0;
      if (j - 1 >= 1)
        ta.emplace_back(row, idx_v(ci, j - 1), -ih2);
      else
        f[row] += ih2 * bc.v(xc, -1.0);
      if (j + 1 <= N - 1)
        ta.emplace_back(row, idx_v(ci, j + 1), -ih2);
      else
        f[row] += ih2 * bc.v(xc, 1.0);
      if (ci >= 1)
        ta.emplace_back(row, idx_v(ci - 1, j), -ih2);
      else {
        diag += 1.0;
        f[row] += 2.0 * ih2 * bc.v(-1.0, xline(j));
      }
      if (ci + 1 <= N - 1)
        ta.emplace_back(row, idx_v(ci + 1, j), -ih2);
      else {
        diag += 1.0;
        f[row] += 2.0 * ih2 * bc.v(1.0, xline(j));
      }
      ta.emplace_back(row, row, diag * ih2);
    }
  }

  // Divergence rows, one per cell; boundary fluxes move to the right side.
  for (index_t cj = 0; cj < N; ++cj) {
    for (index_t ci = 0; ci < N; ++ci) {
      const index_t row = cj * N + ci;
      const double yc = center(cj);
      const double xc = center(ci);
      if (ci + 1 <= N - 1)
        tb.emplace_back(row, idx_u(ci + 1, cj), ih);
      else
        g_full[row] += ih * bc.u(1.0, yc);
      if (ci >= 1)
        tb.emplace_back(row, idx_u(ci, cj), -ih);
      else
        g_full[row] -= ih * bc.u(-1.0, yc);
      if (cj + 1 <= N - 1)
        tb.emplace_back(row, idx_v(ci, cj + 1), ih);
      else
        g_full[row] += ih * bc.v(xc, 1.0);
      if (cj >= 1)
        tb.emplace_back(row, idx_v(ci, cj), -ih);
      else
        g_full[row] -= ih * bc.v(xc, -1.0);
    }
  }

  SaddlePointSystem sys;
  sys.A = SparseMatrix::from_triplets(n, n, std::move(ta));
  sys.B = drop_leading_rows(SparseMatrix::from_triplets(m_full, n, std::move(tb)),
                            spec.drop_rows);
  sys.f = std::move(f);
  sys.g.assign(g_full.begin() + spec.drop_rows, g_full.end());
  sys.label = "mac-" + to_string(spec.flow) + " N=" +
              std::to_string(N) + " drop=" + std::to_string(spec.drop_rows);
  return sys;
}

SaddlePointSystem generate_stokes(const StokesSpec& spec) {
  SaddlePointSystem sys = assemble_stokes(spec);
  const ValidationReport rep = validate(sys);
  if (!rep.all_passed()) {
    for (const auto& c : rep.checks) {
      if (!c.passed && c.name.rfind("B full row rank", 0) == 0)
        throw RankRepairFailed(
            "generate_stokes: B*Bt is still rank deficient after dropping " +
            std::to_string(spec.drop_rows) +
            " rows; increase drop_rows (" + c.detail + ")");
    }
    throw Error("generate_stokes: validation failed\n" + rep.summary());
  }
  return sys;
}

}  // namespace sadpre
