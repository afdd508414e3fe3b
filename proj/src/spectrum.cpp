// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "sadpre/cholesky.hpp"
#include "sadpre/errors.hpp"
#include "sadpre/gmres.hpp"
#include "sadpre/theory.hpp"

namespace sadpre {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_like(double magnitude, double sign_of) {
  return sign_of >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Iterative row/column norm equalization in powers of two (similarity
// transform by a diagonal matrix, exact in floating point).
void balance(DenseMatrix& a) {
  const index_t n = a.nrows;
  bool done = false;
  while (!done) {
    done = true;
    for (index_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (index_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double total = c + r;
      double f = 1.0;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * total) {
        done = false;
        const double ginv = 1.0 / f;
        for (index_t j = 0; j < n; ++j) a(i, j) *= ginv;
        for (index_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (eigenvalues only).
void to_hessenberg(DenseMatrix& a) {
  const index_t n = a.nrows;
  std::vector<double> w(n), tmp(n);
  for (index_t k = 0; k + 2 < n; ++k) {
    double norm_sq = 0.0;
    for (index_t i = k + 1; i < n; ++i) norm_sq += a(i, k) * a(i, k);
    double below_sq = norm_sq - a(k + 1, k) * a(k + 1, k);
    if (below_sq <= 0.0) continue;  // already Hessenberg in this column
    const double alpha = -sign_like(std::sqrt(norm_sq), a(k + 1, k));
    // v = x - alpha e_1, w = v / ||v||
    double vnorm_sq = norm_sq - 2.0 * alpha * a(k + 1, k) + alpha * alpha;
    if (vnorm_sq <= 0.0) continue;
    const double vinv = 1.0 / std::sqrt(vnorm_sq);
    for (index_t i = k + 1; i < n; ++i) w[i] = a(i, k) * vinv;
    w[k + 1] = (a(k + 1, k) - alpha) * vinv;
    // rows: A <- (I - 2 w w^T) A  on the trailing block
    for (index_t j = k; j < n; ++j) {
      double s = 0.0;
      for (index_t i = k + 1; i < n; ++i) s += w[i] * a(i, j);
      s *= 2.0;
      for (index_t i = k + 1; i < n; ++i) a(i, j) -= s * w[i];
    }
    // cols: A <- A (I - 2 w w^T)
    for (index_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (index_t j = k + 1; j < n; ++j) s += a(i, j) * w[j];
      s *= 2.0;
      for (index_t j = k + 1; j < n; ++j) a(i, j) -= s * w[j];
    }
    a(k + 1, k) = alpha;
    for (index_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Implicit double-shift QR on an upper Hessenberg matrix; the classic
// Francis iteration with deflation checks and exceptional shifts.
void francis_qr(DenseMatrix& h, std::vector<double>& wr, std::vector<double>& wi) {
  const index_t n = h.nrows;
  wr.assign(n, 0.0);
  wi.assign(n, 0.0);
  if (n == 0) return;

  double anorm = 0.0;
  for (index_t i = 0; i < n; ++i)
    for (index_t j = std::max<index_t>(0, i - 1); j < n; ++j)
      anorm += std::abs(h(i, j));
  if (anorm == 0.0) return;  // zero matrix

  index_t en = n - 1;
  double t = 0.0;
  int its = 0;
  while (en >= 0) {
    // Find the start l of the trailing unreduced block.
    index_t l = en;
    while (l > 0) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = anorm;
      if (std::abs(h(l, l - 1)) <= kEps * s) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }

    double x = h(en, en);
    if (l == en) {  // 1x1 block
      wr[en] = x + t;
      wi[en] = 0.0;
      its = 0;
      if (en == 0) break;
      --en;
      continue;
    }
    double y = h(en - 1, en - 1);
    double w = h(en, en - 1) * h(en - 1, en);
    if (l == en - 1) {  // 2x2 block
      const double p = 0.5 * (y - x);
      const double q = p * p + w;
      double z = std::sqrt(std::abs(q));
      x += t;
      if (q >= 0.0) {
        z = p + sign_like(z, p);
        wr[en - 1] = wr[en] = x + z;
        if (z != 0.0) wr[en] = x - w / z;
        wi[en - 1] = wi[en] = 0.0;
      } else {
        wr[en - 1] = wr[en] = x + p;
        wi[en - 1] = z;
        wi[en] = -z;
      }
      its = 0;
      if (en == 1) break;
      en -= 2;
      continue;
    }

    if (its == 30)
      throw MaxitExceeded("hqr_eigenvalues: a block failed to deflate");
    if (its == 10 || its == 20) {
      // exceptional shift
      t += x;
      for (index_t i = 0; i <= en; ++i) h(i, i) -= x;
      const double s = std::abs(h(en, en - 1)) + std::abs(h(en - 1, en - 2));
      x = y = 0.75 * s;
      w = -0.4375 * s * s;
    }
    ++its;

    // Look for two consecutive small subdiagonals from en-2 down to l.
    index_t m = en - 2;
    double p = 0.0, q = 0.0, r = 0.0;
    for (;; --m) {
      const double z = h(m, m);
      const double rr = x - z;
      const double ss = y - z;
      p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
      q = h(m + 1, m + 1) - z - rr - ss;
      r = h(m + 2, m + 1);
      const double scale = std::abs(p) + std::abs(q) + std::abs(r);
      p /= scale;
      q /= scale;
      r /= scale;
      if (m == l) break;
      const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
      const double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) +
                                      std::abs(h(m + 1, m + 1)));
      if (u <= kEps * v) break;
    }
    for (index_t i = m + 2; i <= en; ++i) {
      h(i, i - 2) = 0.0;
      if (i != m + 2) h(i, i - 3) = 0.0;
    }

    // Double QR sweep on rows/columns m..en.
    for (index_t k = m; k <= en - 1; ++k) {
      const bool notlast = k != en - 1;
      if (k != m) {
        p = h(k, k - 1);
        q = h(k + 1, k - 1);
        r = notlast ? h(k + 2, k - 1) : 0.0;
        x = std::abs(p) + std::abs(q) + std::abs(r);
        if (x == 0.0) continue;
        p /= x;
        q /= x;
        r /= x;
      }
      const double s = sign_like(std::sqrt(p * p + q * q + r * r), p);
      if (s == 0.0) continue;
      if (k == m) {
        if (l != m) h(k, k - 1) = -h(k, k - 1);
      } else {
        h(k, k - 1) = -s * x;
      }
      p += s;
      x = p / s;
      y = q / s;
      double z = r / s;
      q /= p;
      r /= p;
      for (index_t j = k; j <= en; ++j) {  // row modification
        double pp = h(k, j) + q * h(k + 1, j);
        if (notlast) {
          pp += r * h(k + 2, j);
          h(k + 2, j) -= pp * z;
        }
        h(k + 1, j) -= pp * y;
        h(k, j) -= pp * x;
      }
      const index_t mmin = std::min(en, k + 3);
      for (index_t i = l; i <= mmin; ++i) {  // column modification
        double pp = x * h(i, k) + y * h(i, k + 1);
        if (notlast) {
          pp += z * h(i, k + 2);
          h(i, k + 2) -= pp * r;
        }
        h(i, k + 1) -= pp * q;
        h(i, k) -= pp;
      }
    }
  }
}

void check_limit(const SaddlePointSystem& sys, index_t limit, const char* what) {
  if (sys.n() + sys.m() > limit)
    throw DenseLimitExceeded(std::string(what) + " limited to n + m <= " +
                             std::to_string(limit) + ", got " +
                             std::to_string(sys.n() + sys.m()));
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> hqr_eigenvalues(DenseMatrix a) {
  if (a.nrows != a.ncols) throw Error("hqr_eigenvalues: matrix must be square");
  balance(a);
  to_hessenberg(a);
  std::vector<double> re, im;
  francis_qr(a, re, im);
  std::vector<index_t> order(a.nrows);
  for (index_t i = 0; i < a.nrows; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](index_t i, index_t j) {
    if (re[i] != re[j]) return re[i] < re[j];
    return im[i] < im[j];
  });
  std::vector<double> sre(a.nrows), sim(a.nrows);
  for (index_t i = 0; i < a.nrows; ++i) {
    sre[i] = re[order[i]];
    sim[i] = im[order[i]];
  }
  return {std::move(sre), std::move(sim)};
}

std::vector<double> ahat_eigs(const SaddlePointSystem& sys, double alpha) {
  if (alpha <= 0.0) throw InvalidAlpha("ahat_eigs: alpha must be positive");
  check_limit(sys, 2000, "ahat_eigs");
  const CholeskyFactor chol_a = cholesky(sys.A, "A");
  const DenseMatrix c = schur_ainv_dense(sys, chol_a);
  const CholeskyFactor chol_s =
      cholesky(shift_diag(gram(sys.B), alpha), "alpha*I + B*Bt");
  return congruence_eigs(chol_s, c);
}

DenseMatrix operator_to_dense(const std::function<BlockVector(const BlockVector&)>& op,
                              index_t n, index_t m) {
  const index_t dim = n + m;
  DenseMatrix t(dim, dim);
  std::vector<double> e(dim, 0.0);
  for (index_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    const std::vector<double> col = op(BlockVector::from_flat(e, n, m)).flat();
    for (index_t i = 0; i < dim; ++i) t(i, j) = col[i];
    e[j] = 0.0;
  }
  return t;
}

SpectrumReport preconditioned_spectrum(const SaddlePointSystem& sys,
                                       const PrecondContext& ctx) {
  SpectrumReport rep;
  rep.label = sys.label.empty() ? "system" : sys.label;
  rep.alpha = ctx.alpha;

  if (ctx.kind == PrecondKind::rehss) {
    check_limit(sys, 2000, "preconditioned_spectrum (REHSS)");
    // Block triangular structure: eigenvalue 1 with multiplicity n plus the
    // spectrum of Ahat.
    rep.eigenvalues_real.assign(sys.n(), 1.0);
    const std::vector<double> mu = ahat_eigs(sys, ctx.alpha);
    rep.eigenvalues_real.insert(rep.eigenvalues_real.end(), mu.begin(), mu.end());
    rep.eigenvalues_imag.assign(rep.eigenvalues_real.size(), 0.0);
  } else {
    check_limit(sys, 800, "preconditioned_spectrum (dense general path)");
    const DenseMatrix t = operator_to_dense(
        [&](const BlockVector& v) {
          return apply_precond(ctx, apply_saddle(sys, v));
        },
        sys.n(), sys.m());
    auto [re, im] = hqr_eigenvalues(t);
    rep.eigenvalues_real = std::move(re);
    rep.eigenvalues_imag = std::move(im);
  }

  const std::size_t total = rep.eigenvalues_real.size();
  std::vector<double> dist(total);
  rep.min_real = rep.max_real = rep.eigenvalues_real.empty() ? 0.0 : rep.eigenvalues_real[0];
  for (std::size_t i = 0; i < total; ++i) {
    const double dre = rep.eigenvalues_real[i] - 1.0;
    const double dim_ = rep.eigenvalues_imag[i];
    dist[i] = std::hypot(dre, dim_);
    if (dist[i] <= 1e-8) ++rep.n_at_one;
    rep.min_real = std::min(rep.min_real, rep.eigenvalues_real[i]);
    rep.max_real = std::max(rep.max_real, rep.eigenvalues_real[i]);
  }
  if (total > 0) {
    std::sort(dist.begin(), dist.end());
    const std::size_t rank =
        static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(total)));
    rep.cluster_radius_90 = dist[rank == 0 ? 0 : rank - 1];
  }
  return rep;
}

MinpolyResult minpoly_check(const SaddlePointSystem& sys, double alpha, double tol) {
  const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, alpha);
  BlockVector ones(sys.n(), sys.m());
  for (double& v : ones.x) v = 1.0;
  for (double& v : ones.y) v = 1.0;
  const BlockVector b = apply_saddle(sys, ones);
  const BlockVector x0(sys.n(), sys.m());
  const auto [u, rep] = gmres_full(
      [&](const BlockVector& v) { return apply_saddle(sys, v); }, &ctx, b, x0, tol);
  MinpolyResult out;
  out.iterations = rep.total_inner_iterations;
  out.bound = sys.m() + 1;
  out.pass = rep.converged && out.iterations <= out.bound;
  return out;
}

std::vector<AlphaLimitRow> alpha_limit_study(const SaddlePointSystem& sys,
                                             std::span<const double> alphas) {
  check_limit(sys, 2000, "alpha_limit_study");
  for (const double a : alphas)
    if (a <= 0.0) throw InvalidAlpha("alpha_limit_study: alphas must be positive");
  const std::vector<double> eig_a = sym_eigs(to_dense(sys.A));
  std::vector<AlphaLimitRow> rows;
  rows.reserve(alphas.size());
  for (const double a : alphas) {
    const std::vector<double> mu = ahat_eigs(sys, a);
    AlphaLimitRow row;
    row.alpha = a;
    row.min_nonunit = mu.front();
    row.max_nonunit = mu.back();
    row.lo_bound = 1.0 / eig_a.back();
    row.hi_bound = 1.0 / eig_a.front();
    rows.push_back(row);
  }
  return rows;
}

void write_scatter(const SpectrumReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_scatter: cannot open " + path.string());
  out << "# " << report.label << " alpha=" << report.alpha << "\n";
  char buf[64];
  for (std::size_t i = 0; i < report.eigenvalues_real.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g", report.eigenvalues_real[i],
                  report.eigenvalues_imag[i]);
    out << buf << "\n";
  }
  if (!out.good()) throw Error("write_scatter: write failed for " + path.string());
}

}  // namespace sadpre
