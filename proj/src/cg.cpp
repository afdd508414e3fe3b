// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/cg.hpp"

#include <cmath>

#include "sadpre/errors.hpp"
#include "sadpre/kernels.hpp"

namespace sadpre {

namespace {
double nrm2(std::span<const double> v) {
  return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}
}  // namespace

CgResult cg_solve(const LinOp& apply_m, std::span<const double> b, double tol,
                  int maxit) {
  if (tol <= 0.0) throw Error("cg_solve: tol must be positive");
  const std::size_t n = b.size();
  CgResult out;
  out.x.assign(n, 0.0);
  const double bnorm = nrm2(b);
  if (bnorm == 0.0) return out;

  std::vector<double> res(b.begin(), b.end());
  std::vector<double> p = res;
  std::vector<double> mp(n);
  double rr = kernels::dot(res.data(), res.data(), n);

  for (int it = 0; it < maxit; ++it) {
    apply_m(p, mp);
    const double pmp = kernels::dot(p.data(), mp.data(), n);
    if (pmp <= 0.0)
      throw BreakdownNonSpd("cg_solve: nonpositive curvature, operator is not SPD");
    const double alpha = rr / pmp;
    kernels::axpy(alpha, p.data(), out.x.data(), n);
    kernels::axpy(-alpha, mp.data(), res.data(), n);
    const double rr_next = kernels::dot(res.data(), res.data(), n);
    out.iterations = it + 1;
    if (std::sqrt(rr_next) <= tol * bnorm) {
      // Recurrence said done; accept on the true residual.
      apply_m(out.x, mp);
      double true_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = b[i] - mp[i];
        true_sq += d * d;
      }
      out.relres = std::sqrt(true_sq) / bnorm;
      if (out.relres <= tol) return out;
    }
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = res[i] + beta * p[i];
  }
  throw MaxitExceeded("cg_solve: no convergence within " +
                      std::to_string(maxit) + " iterations");
}

}  // namespace sadpre
