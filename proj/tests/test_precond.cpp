// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "sadpre/errors.hpp"
#include "sadpre/precond.hpp"
#include "support/test_support.hpp"

using namespace sadpre;
using testsup::toy_system;

namespace {

BlockVector bv(std::vector<double> x, std::vector<double> y) {
  BlockVector v;
  v.x = std::move(x);
  v.y = std::move(y);
  return v;
}

// P z = r solved densely through the LU oracle.
BlockVector oracle_apply(const SaddlePointSystem& sys, PrecondKind kind,
                         double alpha, const BlockVector& r) {
  const std::vector<double> z = testsup::dense_solve(
      testsup::assemble_precond(sys, kind, alpha), r.flat());
  return BlockVector::from_flat(z, sys.n(), sys.m());
}

}  // namespace

TEST_CASE("build_precond populates only what the kind needs") {
  const SaddlePointSystem toy = toy_system();

  const PrecondContext rehss = build_precond(toy, PrecondKind::rehss, 1.0);
  REQUIRE(rehss.chol_A.has_value());
  REQUIRE(rehss.chol_S.has_value());
  CHECK_FALSE(rehss.chol_BBt.has_value());
  CHECK_FALSE(rehss.chol_A_shift.has_value());
  CHECK(solve_chol(*rehss.chol_A, std::vector<double>{2.0})[0] ==
        doctest::Approx(1.0));
  // alpha I + B Bt = [2]
  CHECK(solve_chol(*rehss.chol_S, std::vector<double>{2.0})[0] ==
        doctest::Approx(1.0));

  const PrecondContext rhss = build_precond(toy, PrecondKind::rhss, 1.0);
  REQUIRE(rhss.chol_A.has_value());
  REQUIRE(rhss.chol_BBt.has_value());
  CHECK_FALSE(rhss.chol_S.has_value());
  CHECK(solve_chol(*rhss.chol_BBt, std::vector<double>{1.0})[0] ==
        doctest::Approx(1.0));

  const PrecondContext hss = build_precond(toy, PrecondKind::hss, 1.0);
  REQUIRE(hss.chol_A_shift.has_value());
  REQUIRE(hss.chol_hss_schur.has_value());
  CHECK_FALSE(hss.chol_A.has_value());

  CHECK_THROWS_AS(build_precond(toy, PrecondKind::rehss, 0.0), InvalidAlpha);
  CHECK_THROWS_AS(build_precond(toy, PrecondKind::hss, -1.0), InvalidAlpha);
}

TEST_CASE("apply_rehss on the toy system") {
  const SaddlePointSystem toy = toy_system();
  const PrecondContext ctx = build_precond(toy, PrecondKind::rehss, 1.0);

  // Dense oracle: [[2,2],[-1,1]] z = [1,1]  =>  z = (-1/4, 3/4).
  const BlockVector z = apply_rehss(ctx, bv({1.0}, {1.0}));
  CHECK(z.x[0] == doctest::Approx(-0.25));
  CHECK(z.y[0] == doctest::Approx(0.75));
  const BlockVector zo = oracle_apply(toy, PrecondKind::rehss, 1.0, bv({1}, {1}));
  CHECK(z.x[0] == doctest::Approx(zo.x[0]));
  CHECK(z.y[0] == doctest::Approx(zo.y[0]));

  const BlockVector zz = apply_rehss(ctx, BlockVector(1, 1));
  CHECK(zz.x[0] == 0.0);
  CHECK(zz.y[0] == 0.0);

  // A = I, B = [1], alpha = 1, r = ([2],[0]): w1 = 2, w2 = 1, z = ([1],[1]).
  SaddlePointSystem eye;
  eye.A = SparseMatrix::identity(1);
  eye.B = SparseMatrix::from_triplets(1, 1, {{0, 0, 1.0}});
  eye.f.assign(1, 0.0);
  eye.g.assign(1, 0.0);
  const PrecondContext ctx_eye = build_precond(eye, PrecondKind::rehss, 1.0);
  const BlockVector ze = apply_rehss(ctx_eye, bv({2.0}, {0.0}));
  CHECK(ze.x[0] == doctest::Approx(1.0));
  CHECK(ze.y[0] == doctest::Approx(1.0));
}

TEST_CASE("apply_rhss on the toy system") {
  const SaddlePointSystem toy = toy_system();
  const PrecondContext ctx = build_precond(toy, PrecondKind::rhss, 1.0);

  // Dense oracle: [[2,2],[-1,0]] z = [1,1]  =>  z = (-1, 3/2).
  const BlockVector z = apply_rhss(ctx, bv({1.0}, {1.0}));
  CHECK(z.x[0] == doctest::Approx(-1.0));
  CHECK(z.y[0] == doctest::Approx(1.5));
  const BlockVector zo = oracle_apply(toy, PrecondKind::rhss, 1.0, bv({1}, {1}));
  CHECK(z.x[0] == doctest::Approx(zo.x[0]));
  CHECK(z.y[0] == doctest::Approx(zo.y[0]));

  const BlockVector zz = apply_rhss(ctx, BlockVector(1, 1));
  CHECK(zz.x[0] == 0.0);
  CHECK(zz.y[0] == 0.0);

  // alpha = 2, r = ([2],[0]): w1 = 1, z2 = 2, z1 = 0.
  const PrecondContext ctx2 = build_precond(toy, PrecondKind::rhss, 2.0);
  const BlockVector z2 = apply_rhss(ctx2, bv({2.0}, {0.0}));
  CHECK(z2.x[0] == doctest::Approx(0.0));
  CHECK(z2.y[0] == doctest::Approx(2.0));
}

TEST_CASE("apply_hss on the toy system") {
  const SaddlePointSystem toy = toy_system();
  const PrecondContext ctx = build_precond(toy, PrecondKind::hss, 1.0);

  // Dense oracle: [[3,3],[-1,1]] z = [1,1]  =>  z = (-1/3, 2/3).
  const BlockVector z = apply_hss(ctx, bv({1.0}, {1.0}));
  CHECK(z.x[0] == doctest::Approx(-1.0 / 3.0));
  CHECK(z.y[0] == doctest::Approx(2.0 / 3.0));
  const BlockVector zo = oracle_apply(toy, PrecondKind::hss, 1.0, bv({1}, {1}));
  CHECK(z.x[0] == doctest::Approx(zo.x[0]));
  CHECK(z.y[0] == doctest::Approx(zo.y[0]));

  const BlockVector zz = apply_hss(ctx, BlockVector(1, 1));
  CHECK(zz.x[0] == 0.0);
  CHECK(zz.y[0] == 0.0);

  // alpha = 2, r = ([4],[2]): u1 = 1, u2 = 1, z2 = 6/5, z1 = 2/5.
  const PrecondContext ctx2 = build_precond(toy, PrecondKind::hss, 2.0);
  const BlockVector z2 = apply_hss(ctx2, bv({4.0}, {2.0}));
  CHECK(z2.x[0] == doctest::Approx(0.4));
  CHECK(z2.y[0] == doctest::Approx(1.2));
}

TEST_CASE("apply_precond dispatches on kind") {
  const SaddlePointSystem toy = toy_system();

  const PrecondContext none = build_precond(toy, PrecondKind::none, 1.0);
  const BlockVector id = apply_precond(none, bv({1.0}, {2.0}));
  CHECK(id.x[0] == 1.0);
  CHECK(id.y[0] == 2.0);

  const PrecondContext rehss = build_precond(toy, PrecondKind::rehss, 1.0);
  const BlockVector a = apply_precond(rehss, bv({1.0}, {1.0}));
  const BlockVector b = apply_rehss(rehss, bv({1.0}, {1.0}));
  CHECK(a.x[0] == b.x[0]);
  CHECK(a.y[0] == b.y[0]);

  const PrecondContext hss = build_precond(toy, PrecondKind::hss, 1.0);
  const BlockVector c = apply_precond(hss, bv({1.0}, {1.0}));
  const BlockVector d = apply_hss(hss, bv({1.0}, {1.0}));
  CHECK(c.x[0] == d.x[0]);
  CHECK(c.y[0] == d.y[0]);

  CHECK_THROWS_AS(apply_rehss(hss, bv({1.0}, {1.0})), Error);
}

TEST_CASE("round trip: dense-assembled P times apply(r) reproduces r") {
  std::mt19937_64 rng(2024);
  testsup::RandomSystemOptions opt;
  opt.n_max = 60;
  opt.m_max = 20;
  for (int rep = 0; rep < 6; ++rep) {
    const SaddlePointSystem sys = testsup::random_system(rng, opt);
    const BlockVector r = testsup::random_block(rng, sys.n(), sys.m());
    const double rnorm = norm2(r);
    for (const PrecondKind kind :
         {PrecondKind::hss, PrecondKind::rhss, PrecondKind::rehss}) {
      for (const double alpha : {1e-2, 1.0, 1e2}) {
        const PrecondContext ctx = build_precond(sys, kind, alpha);
        const BlockVector z = apply_precond(ctx, r);
        const DenseMatrix p = testsup::assemble_precond(sys, kind, alpha);
        const std::vector<double> pz = dense_matvec(p, z.flat());
        CHECK(testsup::max_abs_diff(pz, r.flat()) <= 1e-8 * rnorm);
      }
    }
  }
}

TEST_CASE("difference P - A_blk matches its closed form entrywise") {
  std::mt19937_64 rng(55);
  testsup::RandomSystemOptions opt;
  opt.n_max = 40;
  opt.m_max = 12;
  const SaddlePointSystem sys = testsup::random_system(rng, opt);
  const DenseMatrix a_blk = testsup::assemble_saddle(sys);
  for (const PrecondKind kind :
       {PrecondKind::hss, PrecondKind::rhss, PrecondKind::rehss}) {
    for (const double alpha : {0.3, 1.0, 7.5}) {
      const DenseMatrix p = testsup::assemble_precond(sys, kind, alpha);
      DenseMatrix diff(p.nrows, p.ncols);
      for (std::size_t i = 0; i < p.a.size(); ++i) diff.a[i] = p.a[i] - a_blk.a[i];
      const DenseMatrix formula = testsup::assemble_residual_formula(sys, kind, alpha);
      CHECK(testsup::max_abs_diff(diff, formula) <= 1e-10 * max_abs(p));
    }
  }
}

TEST_CASE("cg inner mode agrees with direct mode") {
  std::mt19937_64 rng(66);
  testsup::RandomSystemOptions opt;
  opt.n_max = 50;
  opt.m_max = 15;
  const SaddlePointSystem sys = testsup::random_system(rng, opt);
  const BlockVector r = testsup::random_block(rng, sys.n(), sys.m());
  InnerStrategy cg;
  cg.mode = InnerStrategy::Mode::cg;
  for (const PrecondKind kind :
       {PrecondKind::hss, PrecondKind::rhss, PrecondKind::rehss}) {
    const PrecondContext direct = build_precond(sys, kind, 0.7);
    const PrecondContext iterative = build_precond(sys, kind, 0.7, cg);
    const BlockVector zd = apply_precond(direct, r);
    const BlockVector zc = apply_precond(iterative, r);
    CHECK(testsup::max_abs_diff(zd.flat(), zc.flat()) <=
          1e-8 * std::max(1.0, norm2(zd)));
  }

  InnerStrategy bad;
  bad.mode = InnerStrategy::Mode::cg;
  bad.cg_tol = 1e-3;  // outside (0, 1e-6]
  CHECK_THROWS_AS(build_precond(sys, PrecondKind::rehss, 1.0, bad), Error);
}
