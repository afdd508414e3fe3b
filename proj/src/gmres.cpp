// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/gmres.hpp"

#include <chrono>
#include <cmath>

#include "sadpre/errors.hpp"

namespace sadpre {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::max_restarts:
      return "max_restarts";
    case Termination::timeout:
      return "timeout";
    case Termination::breakdown:
      return "breakdown";
  }
  return "?";
}

namespace {

constexpr double kBreakdownTol = 1e-14;       // Hessenberg subdiagonal floor
constexpr double kStagnationTol = 1e-16;      // relative per-cycle reduction

double nrm2(const std::vector<double>& v) {
  return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

struct Workspace {
  const BlockOp& op;
  const PrecondContext* ctx;
  index_t n, m;

  std::vector<double> apply(const std::vector<double>& v) const {
    BlockVector bv = BlockVector::from_flat(v, n, m);
    bv = op(bv);
    if (ctx != nullptr && ctx->kind != PrecondKind::none)
      bv = apply_precond(*ctx, bv);
    return bv.flat();
  }

  // b - op(x), unpreconditioned
  std::vector<double> raw_residual(const std::vector<double>& x,
                                   const std::vector<double>& b) const {
    BlockVector bv = op(BlockVector::from_flat(x, n, m));
    std::vector<double> r = bv.flat();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
  }

  std::vector<double> precondition(const std::vector<double>& v) const {
    if (ctx == nullptr || ctx->kind == PrecondKind::none) return v;
    return apply_precond(*ctx, BlockVector::from_flat(v, n, m)).flat();
  }

  std::vector<double> precondition_forward(const std::vector<double>& v) const {
    if (ctx == nullptr || ctx->kind == PrecondKind::none) return v;
    return apply_precond_forward(*ctx, BlockVector::from_flat(v, n, m)).flat();
  }
};

}  // namespace

std::pair<BlockVector, SolveReport> gmres(const BlockOp& op,
                                          const PrecondContext* ctx,
                                          const BlockVector& b,
                                          const BlockVector& x0,
                                          const GmresConfig& cfg) {
  if (cfg.restart < 1) throw Error("gmres: restart must be >= 1");
  if (cfg.rel_tol <= 0.0) throw Error("gmres: rel_tol must be positive");
  if (cfg.max_restarts < 1) throw Error("gmres: max_restarts must be >= 1");
  if (b.x.size() != x0.x.size() || b.y.size() != x0.y.size())
    throw DimensionMismatch("gmres: b and x0 disagree");

  const index_t n = static_cast<index_t>(b.x.size());
  const index_t m = static_cast<index_t>(b.y.size());
  const Workspace ws{op, ctx, n, m};
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  const std::vector<double> bflat = b.flat();
  // Reference norm of the stopping rule.
  const double ref = cfg.literal_stop_rule
                         ? nrm2(ws.precondition_forward(bflat))
                         : nrm2(ws.precondition(bflat));
  const auto rel = [&](double v) { return ref > 0.0 ? v / ref : v; };

  std::vector<double> x = x0.flat();
  SolveReport rep;
  rep.termination = Termination::max_restarts;

  // Stop metric for a candidate solution; also records the honest final
  // relative residual.
  const auto stop_metric = [&](const std::vector<double>& cand) {
    const std::vector<double> raw = ws.raw_residual(cand, bflat);
    return rel(nrm2(cfg.literal_stop_rule ? ws.precondition_forward(raw)
                                          : ws.precondition(raw)));
  };

  std::vector<std::vector<double>> V;  // Arnoldi basis
  std::vector<std::vector<double>> R;  // rotated Hessenberg columns
  std::vector<double> cs, sn, g;

  bool done = false;
  for (int cycle = 0; cycle < cfg.max_restarts && !done; ++cycle) {
    std::vector<double> r = ws.precondition(ws.raw_residual(x, bflat));
    const double beta = nrm2(r);
    if (cfg.record_history) {
      rep.cycle_starts.push_back(rep.residual_history.size());
      rep.residual_history.push_back(rel(beta));
    }

    // Cycle-start convergence test (covers an exact x0 and re-entry after a
    // drift-guard restart).
    if (!cfg.literal_stop_rule && beta <= cfg.rel_tol * ref) {
      rep.final_relres = rel(beta);
      rep.termination = Termination::converged;
      rep.converged = true;
      break;
    }
    if (cfg.literal_stop_rule) {
      const double sm = stop_metric(x);
      if (sm <= cfg.rel_tol) {
        rep.final_relres = sm;
        rep.termination = Termination::converged;
        rep.converged = true;
        break;
      }
    }
    if (beta == 0.0) {  // preconditioned residual exactly zero
      rep.final_relres = 0.0;
      rep.termination = Termination::converged;
      rep.converged = true;
      break;
    }

    ++rep.restarts;
    V.clear();
    R.clear();
    cs.clear();
    sn.clear();
    kernels::scal(1.0 / beta, r.data(), r.size());
    V.push_back(std::move(r));
    g.assign(1, beta);

    // Accumulate y = R^{-1} g over the first k columns into x.
    const auto form_solution = [&](int k, std::vector<double>* into) {
      std::vector<double> y(k);
      for (int i = k - 1; i >= 0; --i) {
        double s = g[i];
        for (int l = i + 1; l < k; ++l) s -= R[l][i] * y[l];
        y[i] = R[i][i] != 0.0 ? s / R[i][i] : 0.0;
      }
      for (int i = 0; i < k; ++i)
        kernels::axpy(y[i], V[i].data(), into->data(), into->size());
    };

    for (int j = 0; j < cfg.restart; ++j) {
      ++rep.total_inner_iterations;
      std::vector<double> w = ws.apply(V[j]);
      std::vector<double> col(j + 2);
      for (int i = 0; i <= j; ++i) {
        col[i] = kernels::dot(w.data(), V[i].data(), w.size());
        kernels::axpy(-col[i], V[i].data(), w.data(), w.size());
      }
      const double hsub = nrm2(w);
      col[j + 1] = hsub;
      for (int i = 0; i < j; ++i) {
        const double a0 = col[i];
        const double a1 = col[i + 1];
        col[i] = cs[i] * a0 + sn[i] * a1;
        col[i + 1] = cs[i] * a1 - sn[i] * a0;
      }
      const double denom = std::hypot(col[j], col[j + 1]);
      double c = 1.0, s = 0.0;
      if (denom > 0.0) {
        c = col[j] / denom;
        s = col[j + 1] / denom;
      }
      cs.push_back(c);
      sn.push_back(s);
      col[j] = denom;
      g.push_back(-s * g[j]);
      g[j] = c * g[j];
      col.pop_back();
      R.push_back(std::move(col));

      const double est = std::abs(g[j + 1]);
      if (cfg.record_history) rep.residual_history.push_back(rel(est));

      const bool lucky = hsub <= kBreakdownTol;
      if (!lucky) {
        kernels::scal(1.0 / hsub, w.data(), w.size());
        V.push_back(std::move(w));
      }
      const bool out_of_time = elapsed() > cfg.max_seconds;

      bool candidate = lucky || est <= cfg.rel_tol * ref;
      if (cfg.literal_stop_rule && !lucky) candidate = true;  // test every step

      if (candidate || out_of_time || j == cfg.restart - 1) {
        std::vector<double> xc = x;
        form_solution(j + 1, &xc);
        const double sm = stop_metric(xc);
        const bool accept = sm <= cfg.rel_tol || lucky;
        if (accept || out_of_time || j == cfg.restart - 1) {
          if (accept || sm < rel(beta)) x = std::move(xc);
          if (accept) {
            if (cfg.record_history) rep.residual_history.push_back(sm);
            rep.final_relres = sm;
            rep.termination = Termination::converged;
            rep.converged = true;
            done = true;
          } else if (out_of_time) {
            rep.final_relres = sm;
            rep.termination = Termination::timeout;
            done = true;
          } else {
            // Natural cycle end; flag true stagnation.
            rep.final_relres = sm;
            if (beta - est < kStagnationTol * beta) {
              rep.termination = Termination::breakdown;
              done = true;
            }
          }
          break;  // leave inner loop
        }
        // Candidate rejected by the true residual: keep iterating.
      }
    }
  }

  rep.wall_seconds = elapsed();
  return {BlockVector::from_flat(x, n, m), rep};
}

std::pair<BlockVector, SolveReport> gmres_full(const BlockOp& op,
                                               const PrecondContext* ctx,
                                               const BlockVector& b,
                                               const BlockVector& x0,
                                               double rel_tol) {
  GmresConfig cfg;
  cfg.restart = static_cast<int>(b.size());
  cfg.rel_tol = rel_tol;
  cfg.max_restarts = 3;
  return gmres(op, ctx, b, x0, cfg);
}

}  // namespace sadpre
