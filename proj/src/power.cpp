// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/power.hpp"

#include <cmath>
#include <vector>

#include "sadpre/errors.hpp"

namespace sadpre {

double power_radius(const LinOp& apply_t, index_t dim, double tol, int maxit) {
  if (dim < 1) throw Error("power_radius: dim must be at least 1");
  std::vector<double> v(dim), w(dim);
  for (index_t i = 0; i < dim; ++i) v[i] = 1.0 + 1e-3 * ((i % 7) - 3);
  double nv = std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
  kernels::scal(1.0 / nv, v.data(), v.size());

  double prev_growth = -1.0;
  double prev_est = -1.0;
  for (int it = 0; it < maxit; ++it) {
    apply_t(v, w);
    const double growth = std::sqrt(kernels::dot(w.data(), w.data(), w.size()));
    if (growth < 1e-140) return 0.0;  // iterate collapsed: nilpotent action
    kernels::scal(1.0 / growth, w.data(), w.size());
    v.swap(w);
    if (prev_growth >= 0.0) {
      const double est = std::sqrt(growth * prev_growth);
      if (prev_est >= 0.0 &&
          std::abs(est - prev_est) < tol * std::max(est, 1e-300))
        return est;
      prev_est = est;
    }
    prev_growth = growth;
  }
  throw MaxitExceeded("power_radius: no convergence within " +
                      std::to_string(maxit) + " iterations");
}

}  // namespace sadpre
