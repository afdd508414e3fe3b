// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "sadpre/errors.hpp"
#include "sadpre/gmres.hpp"
#include "support/test_support.hpp"

using namespace sadpre;
using testsup::toy_system;

namespace {

BlockOp saddle_op(const SaddlePointSystem& sys) {
  return [&sys](const BlockVector& v) { return apply_saddle(sys, v); };
}

BlockOp identity_op() {
  return [](const BlockVector& v) { return v; };
}

// The recurrence entries are nonincreasing within a cycle; the very last
// entry of a converged report is the recomputed true residual, which may sit
// a hair above the final estimate.
void check_history_monotone_within_cycles(const SolveReport& rep) {
  for (std::size_t c = 0; c < rep.cycle_starts.size(); ++c) {
    const std::size_t begin = rep.cycle_starts[c];
    std::size_t end = c + 1 < rep.cycle_starts.size() ? rep.cycle_starts[c + 1]
                                                      : rep.residual_history.size();
    if (c + 1 == rep.cycle_starts.size() && rep.converged && end > begin + 1) --end;
    for (std::size_t i = begin + 1; i < end; ++i)
      CHECK(rep.residual_history[i] <=
            rep.residual_history[i - 1] * (1.0 + 1e-12) + 1e-300);
  }
}

}  // namespace

TEST_CASE("gmres solves the identity operator in one inner iteration") {
  std::mt19937_64 rng(3);
  const BlockVector b = testsup::random_block(rng, 3, 2);
  const BlockVector x0(3, 2);
  GmresConfig cfg;
  const auto [x, rep] = gmres(identity_op(), nullptr, b, x0, cfg);
  CHECK(rep.converged);
  CHECK(rep.restarts == 1);
  CHECK(rep.total_inner_iterations == 1);
  CHECK(testsup::max_abs_diff(x.flat(), b.flat()) <= 1e-12);
  CHECK(rep.final_relres == rep.residual_history.back());
}

TEST_CASE("gmres on the toy system") {
  SaddlePointSystem toy = toy_system();
  const BlockVector b = rhs_all_ones(toy);
  const BlockVector x0(1, 1);
  GmresConfig cfg;

  const PrecondContext rehss = build_precond(toy, PrecondKind::rehss, 1.0);
  const auto [x, rep] = gmres(saddle_op(toy), &rehss, b, x0, cfg);
  CHECK(rep.converged);
  CHECK(rep.total_inner_iterations <= 2);  // Krylov dimension bound m+1
  CHECK(x.x[0] == doctest::Approx(1.0));
  CHECK(x.y[0] == doctest::Approx(1.0));

  const auto [xu, repu] = gmres(saddle_op(toy), nullptr, b, x0, cfg);
  CHECK(repu.converged);
  CHECK(repu.total_inner_iterations <= 2);  // full Krylov dimension n+m
  CHECK(xu.x[0] == doctest::Approx(1.0));
  CHECK(xu.y[0] == doctest::Approx(1.0));
}

TEST_CASE("gmres with an exact initial guess reports zero cycles") {
  SaddlePointSystem toy = toy_system();
  const BlockVector b = rhs_all_ones(toy);
  BlockVector ones(1, 1);
  ones.x[0] = ones.y[0] = 1.0;
  GmresConfig cfg;
  const auto [x, rep] = gmres(saddle_op(toy), nullptr, b, ones, cfg);
  CHECK(rep.converged);
  CHECK(rep.restarts == 0);
  CHECK(rep.total_inner_iterations == 0);
}

TEST_CASE("gmres_full examples") {
  SaddlePointSystem toy = toy_system();
  const BlockVector b = rhs_all_ones(toy);
  const BlockVector x0(1, 1);
  const PrecondContext rehss = build_precond(toy, PrecondKind::rehss, 1.0);
  const auto [x, rep] = gmres_full(saddle_op(toy), &rehss, b, x0, 1e-12);
  CHECK(rep.converged);
  CHECK(rep.total_inner_iterations <= 2);

  std::mt19937_64 rng(8);
  const BlockVector bi = testsup::random_block(rng, 4, 1);
  const auto [xi, repi] = gmres_full(identity_op(), nullptr, bi, BlockVector(4, 1), 1e-12);
  CHECK(repi.converged);
  CHECK(repi.total_inner_iterations == 1);

  testsup::RandomSystemOptions opt;
  opt.n_min = 30;
  opt.n_max = 30;
  opt.m_min = 10;
  opt.m_max = 10;
  const SaddlePointSystem sys = testsup::random_system(rng, opt);
  const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, 1.0);
  const auto [xr, repr] =
      gmres_full(saddle_op(sys), &ctx, sys.rhs(), BlockVector(30, 10), 1e-10);
  CHECK(repr.converged);
  CHECK(repr.total_inner_iterations <= 11);  // m + 1
}

TEST_CASE("Krylov dimension bound m+1 holds on 20 random systems") {
  std::mt19937_64 rng(90210);
  testsup::RandomSystemOptions opt;
  opt.n_max = 120;
  opt.m_max = 40;
  for (int rep_i = 0; rep_i < 20; ++rep_i) {
    const SaddlePointSystem sys = testsup::random_system(rng, opt);
    const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, 1.0);
    const auto [x, rep] = gmres_full(saddle_op(sys), &ctx, sys.rhs(),
                                     BlockVector(sys.n(), sys.m()), 1e-10);
    CHECK(rep.converged);
    CHECK(rep.total_inner_iterations <= sys.m() + 1);
  }
}

TEST_CASE("restarted run matches gmres_full when restart = n+m") {
  std::mt19937_64 rng(31415);
  testsup::RandomSystemOptions opt;
  opt.n_max = 40;
  opt.m_max = 12;
  const SaddlePointSystem sys = testsup::random_system(rng, opt);
  const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, 2.0);
  const BlockVector x0(sys.n(), sys.m());

  GmresConfig cfg;
  cfg.restart = sys.n() + sys.m();
  cfg.rel_tol = 1e-10;
  cfg.max_restarts = 3;
  const auto [xa, ra] = gmres(saddle_op(sys), &ctx, sys.rhs(), x0, cfg);
  const auto [xb, rb] = gmres_full(saddle_op(sys), &ctx, sys.rhs(), x0, 1e-10);
  CHECK(ra.total_inner_iterations == rb.total_inner_iterations);
  CHECK(ra.restarts == rb.restarts);
  CHECK(ra.final_relres == rb.final_relres);
  CHECK(ra.residual_history == rb.residual_history);
  CHECK(xa.flat() == xb.flat());
}

TEST_CASE("history is monotone within cycles and solution is accurate") {
  std::mt19937_64 rng(777);
  testsup::RandomSystemOptions opt;
  opt.n_max = 80;
  opt.m_max = 25;
  for (int rep_i = 0; rep_i < 5; ++rep_i) {
    SaddlePointSystem sys = testsup::random_system(rng, opt);
    const BlockVector b = rhs_all_ones(sys);
    GmresConfig cfg;  // defaults: GMRES(30), tol 1e-12
    for (const PrecondKind kind :
         {PrecondKind::hss, PrecondKind::rhss, PrecondKind::rehss, PrecondKind::none}) {
      const PrecondContext ctx = build_precond(sys, kind, 1.0);
      const auto [x, rep] = gmres(saddle_op(sys), &ctx, b, BlockVector(sys.n(), sys.m()), cfg);
      CHECK(rep.converged);
      check_history_monotone_within_cycles(rep);
      CHECK(rep.final_relres == rep.residual_history.back());
      double err = 0.0;
      for (const double v : x.flat()) err = std::max(err, std::abs(v - 1.0));
      CHECK(err <= 1e-6);  // all-ones recovery
    }
  }
}

TEST_CASE("literal stopping rule converges and reports its own metric") {
  SaddlePointSystem toy = toy_system();
  const BlockVector b = rhs_all_ones(toy);
  GmresConfig cfg;
  cfg.literal_stop_rule = true;
  const PrecondContext ctx = build_precond(toy, PrecondKind::rehss, 1.0);
  const auto [x, rep] = gmres(saddle_op(toy), &ctx, b, BlockVector(1, 1), cfg);
  CHECK(rep.converged);
  CHECK(rep.final_relres <= cfg.rel_tol);
  CHECK(x.x[0] == doctest::Approx(1.0));
  CHECK(x.y[0] == doctest::Approx(1.0));
}

TEST_CASE("gmres configuration is validated") {
  SaddlePointSystem toy = toy_system();
  const BlockVector b = rhs_all_ones(toy);
  GmresConfig cfg;
  cfg.restart = 0;
  CHECK_THROWS_AS(gmres(saddle_op(toy), nullptr, b, BlockVector(1, 1), cfg), Error);
}
