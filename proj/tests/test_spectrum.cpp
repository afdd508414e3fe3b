// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <random>

#include "doctest.h"
#include "sadpre/cholesky.hpp"
#include "sadpre/errors.hpp"
#include "sadpre/gmres.hpp"
#include "sadpre/spectrum.hpp"
#include "sadpre/theory.hpp"
#include "support/test_support.hpp"

#if defined(SADPRE_HAVE_EIGEN)
#include <Eigen/Dense>
#endif

using namespace sadpre;
using testsup::toy_system;

namespace {

DenseMatrix random_dense(std::mt19937_64& rng, index_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> unit(-scale, scale);
  DenseMatrix m(n, n);
  for (double& v : m.a) v = unit(rng);
  return m;
}

std::vector<std::complex<double>> as_complex_sorted(const std::vector<double>& re,
                                                    const std::vector<double>& im) {
  std::vector<std::complex<double>> v(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im[i]};
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

}  // namespace

TEST_CASE("hqr on small closed-form matrices") {
  // [[2,1],[-1,0]] has the double defective eigenvalue 1.
  DenseMatrix m(2, 2);
  m(0, 0) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  m(1, 1) = 0.0;
  const auto [re, im] = hqr_eigenvalues(m);
  CHECK(re[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(re[1] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(im[0]) <= 1e-7);

  // Rotation-like matrix: complex pair 1 +/- 2i.
  DenseMatrix r(2, 2);
  r(0, 0) = 1.0;
  r(0, 1) = 2.0;
  r(1, 0) = -2.0;
  r(1, 1) = 1.0;
  const auto [re2, im2] = hqr_eigenvalues(r);
  CHECK(re2[0] == doctest::Approx(1.0));
  CHECK(re2[1] == doctest::Approx(1.0));
  CHECK(std::min(im2[0], im2[1]) == doctest::Approx(-2.0));
  CHECK(std::max(im2[0], im2[1]) == doctest::Approx(2.0));

  // Companion matrix of x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3).
  DenseMatrix c(3, 3);
  c(0, 0) = 6.0;
  c(0, 1) = -11.0;
  c(0, 2) = 6.0;
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  const auto [re3, im3] = hqr_eigenvalues(c);
  CHECK(re3[0] == doctest::Approx(1.0));
  CHECK(re3[1] == doctest::Approx(2.0));
  CHECK(re3[2] == doctest::Approx(3.0));
  for (const double v : im3) CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("hqr agrees with sym_eigs on symmetric matrices") {
  std::mt19937_64 rng(42);
  DenseMatrix m = random_dense(rng, 24);
  for (index_t i = 0; i < m.nrows; ++i)
    for (index_t j = i + 1; j < m.ncols; ++j) m(i, j) = m(j, i);
  const std::vector<double> sym = sym_eigs(m);
  const auto [re, im] = hqr_eigenvalues(m);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    CHECK(re[i] == doctest::Approx(sym[i]).epsilon(1e-9));
    CHECK(std::abs(im[i]) <= 1e-9);
  }
}

#if defined(SADPRE_HAVE_EIGEN)
TEST_CASE("hqr cross-checked against Eigen on random nonsymmetric matrices") {
  std::mt19937_64 rng(4242);
  for (const index_t n : {3, 8, 17, 40, 90}) {
    for (int rep = 0; rep < 3; ++rep) {
      const DenseMatrix m = random_dense(rng, n, 2.0);
      Eigen::MatrixXd em(n, n);
      for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) em(i, j) = m(i, j);
      Eigen::EigenSolver<Eigen::MatrixXd> es(em, /*computeEigenvectors=*/false);
      std::vector<double> ere(n), eim(n);
      for (index_t i = 0; i < n; ++i) {
        ere[i] = es.eigenvalues()(i).real();
        eim[i] = es.eigenvalues()(i).imag();
      }
      const auto [re, im] = hqr_eigenvalues(m);
      const auto mine = as_complex_sorted(re, im);
      const auto ref = as_complex_sorted(ere, eim);
      double scale = 1.0;
      for (const auto& z : ref) scale = std::max(scale, std::abs(z));
      for (index_t i = 0; i < n; ++i)
        CHECK(std::abs(mine[i] - ref[i]) <= 1e-7 * scale);
    }
  }
}
#endif

TEST_CASE("ahat_eigs examples") {
  const SaddlePointSystem toy = toy_system();
  CHECK(ahat_eigs(toy, 1.0)[0] == doctest::Approx(0.25));
  CHECK(ahat_eigs(toy, 1e-10)[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(ahat_eigs(toy, 0.0), InvalidAlpha);

  // Closed form for A = I: eigenvalues sigma_i^2 / (alpha + sigma_i^2).
  std::mt19937_64 rng(5);
  SaddlePointSystem eye;
  eye.A = SparseMatrix::identity(8);
  DenseMatrix b(3, 8);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (double& v : b.a) v = unit(rng);
  eye.B = SparseMatrix::from_dense(b);
  eye.f.assign(8, 0.0);
  eye.g.assign(3, 0.0);
  const double alpha = 0.7;
  const std::vector<double> sigma_sq = sym_eigs(to_dense(gram(eye.B)));
  std::vector<double> expected;
  for (const double s : sigma_sq) expected.push_back(s / (alpha + s));
  std::sort(expected.begin(), expected.end());
  const std::vector<double> got = ahat_eigs(eye, alpha);
  CHECK(testsup::max_abs_diff(got, expected) <= 1e-10);
}

TEST_CASE("preconditioned_spectrum examples") {
  const SaddlePointSystem toy = toy_system();

  const PrecondContext rehss = build_precond(toy, PrecondKind::rehss, 1.0);
  const SpectrumReport rep = preconditioned_spectrum(toy, rehss);
  REQUIRE(rep.eigenvalues_real.size() == 2);
  CHECK(rep.eigenvalues_real[0] == doctest::Approx(1.0));
  CHECK(rep.eigenvalues_real[1] == doctest::Approx(0.25));
  CHECK(rep.n_at_one == 1);
  CHECK(rep.min_real == doctest::Approx(0.25));
  CHECK(rep.max_real == doctest::Approx(1.0));

  const PrecondContext none = build_precond(toy, PrecondKind::none, 1.0);
  const SpectrumReport rep_none = preconditioned_spectrum(toy, none);
  // A_blk = [[2,1],[-1,0]] has a defective double eigenvalue at 1.
  CHECK(rep_none.eigenvalues_real[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep_none.eigenvalues_real[1] == doctest::Approx(1.0).epsilon(1e-6));

  // RHSS at alpha_opt = 2 makes P equal to A_blk on the toy: all eigenvalues 1.
  const PrecondContext rhss = build_precond(toy, PrecondKind::rhss, 2.0);
  const SpectrumReport rep_rhss = preconditioned_spectrum(toy, rhss);
  CHECK(rep_rhss.eigenvalues_real[0] == doctest::Approx(1.0));
  CHECK(rep_rhss.eigenvalues_real[1] == doctest::Approx(1.0));
  CHECK(rep_rhss.n_at_one == 2);
}

TEST_CASE("REHSS spectrum matches the densely assembled operator") {
  std::mt19937_64 rng(9);
  testsup::RandomSystemOptions opt;
  opt.n_min = 30;
  opt.n_max = 60;
  opt.m_min = 8;
  opt.m_max = 20;
  const SaddlePointSystem sys = testsup::random_system(rng, opt);
  const double alpha = 1.3;
  const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, alpha);

  const SpectrumReport structural = preconditioned_spectrum(sys, ctx);
  const DenseMatrix t = operator_to_dense(
      [&](const BlockVector& v) { return apply_precond(ctx, apply_saddle(sys, v)); },
      sys.n(), sys.m());
  auto [re, im] = hqr_eigenvalues(t);
  for (const double v : im) CHECK(std::abs(v) <= 1e-8);

  std::vector<double> structural_sorted = structural.eigenvalues_real;
  std::sort(structural_sorted.begin(), structural_sorted.end());
  std::sort(re.begin(), re.end());
  CHECK(testsup::max_abs_diff(structural_sorted, re) <= 1e-8);

  for (const double mu : ahat_eigs(sys, alpha)) CHECK(mu > 0.0);
  CHECK(structural.n_at_one >= sys.n());
}

TEST_CASE("Atilde block of the assembled preconditioned operator") {
  std::mt19937_64 rng(10);
  testsup::RandomSystemOptions opt;
  opt.n_min = 20;
  opt.n_max = 30;
  opt.m_min = 5;
  opt.m_max = 9;
  const SaddlePointSystem sys = testsup::random_system(rng, opt);
  const double alpha = 0.9;
  const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, alpha);
  const DenseMatrix t = operator_to_dense(
      [&](const BlockVector& v) { return apply_precond(ctx, apply_saddle(sys, v)); },
      sys.n(), sys.m());

  // Atilde = A^{-1} Bt - Bt S^{-1} B A^{-1} Bt, assembled densely.
  const index_t n = sys.n();
  const index_t m = sys.m();
  const CholeskyFactor chol_a = cholesky(sys.A);
  const CholeskyFactor chol_s = cholesky(shift_diag(gram(sys.B), alpha));
  const DenseMatrix bt = dense_transpose(to_dense(sys.B));
  DenseMatrix x(n, m);
  for (index_t j = 0; j < m; ++j) {
    std::vector<double> col(n);
    for (index_t i = 0; i < n; ++i) col[i] = bt(i, j);
    const std::vector<double> sol = solve_chol(chol_a, col);
    for (index_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  const DenseMatrix bx = dense_matmul(to_dense(sys.B), x);  // B A^{-1} Bt
  DenseMatrix w(m, m);
  for (index_t j = 0; j < m; ++j) {
    std::vector<double> col(m);
    for (index_t i = 0; i < m; ++i) col[i] = bx(i, j);
    const std::vector<double> sol = solve_chol(chol_s, col);
    for (index_t i = 0; i < m; ++i) w(i, j) = sol[i];
  }
  const DenseMatrix btw = dense_matmul(bt, w);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < m; ++j)
      CHECK(std::abs(t(i, n + j) - (x(i, j) - btw(i, j))) <= 1e-8);
  // Lower-left block is zero and lower-right is Ahat-like: spot check zeros.
  for (index_t i = 0; i < m; ++i)
    for (index_t j = 0; j < n; ++j) CHECK(std::abs(t(n + i, j)) <= 1e-10);
}

TEST_CASE("minpoly_check") {
  SaddlePointSystem toy = toy_system();
  rhs_all_ones(toy);
  const MinpolyResult toy_res = minpoly_check(toy, 1.0);
  CHECK(toy_res.pass);
  CHECK(toy_res.bound == 2);
  CHECK(toy_res.iterations <= 2);

  std::mt19937_64 rng(11);
  testsup::RandomSystemOptions opt;
  opt.n_min = 50;
  opt.n_max = 50;
  opt.m_min = 20;
  opt.m_max = 20;
  const SaddlePointSystem sys = testsup::random_system(rng, opt);
  const MinpolyResult res = minpoly_check(sys, 1.0);
  CHECK(res.pass);
  CHECK(res.bound == 21);
  CHECK(res.iterations <= 21);

  // Negative control: a diagonal perturbation of the operator breaks the
  // m+1 structure, so the detector must notice.
  const PrecondContext ctx = build_precond(sys, PrecondKind::rehss, 1.0);
  const BlockOp noisy = [&sys](const BlockVector& v) {
    BlockVector r = apply_saddle(sys, v);
    for (std::size_t i = 0; i < r.x.size(); ++i)
      r.x[i] *= 1.0 + 0.25 * (static_cast<double>(i % 11) - 5.0) / 5.0;
    for (std::size_t i = 0; i < r.y.size(); ++i)
      r.y[i] *= 1.0 + 0.25 * (static_cast<double>((i + 3) % 11) - 5.0) / 5.0;
    return r;
  };
  const auto [x, rep] = gmres_full(noisy, &ctx, sys.rhs(),
                                   BlockVector(sys.n(), sys.m()), 1e-10);
  CHECK(rep.total_inner_iterations > sys.m() + 1);
}

TEST_CASE("alpha_limit_study") {
  const SaddlePointSystem toy = toy_system();
  const double alphas[] = {1.0, 1e-10};
  const std::vector<AlphaLimitRow> rows = alpha_limit_study(toy, alphas);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].min_nonunit == doctest::Approx(0.5));
  CHECK(rows[1].lo_bound == doctest::Approx(0.5));
  CHECK(rows[1].hi_bound == doctest::Approx(0.5));

  const double alpha_big[] = {1e6};
  const std::vector<AlphaLimitRow> big = alpha_limit_study(toy, alpha_big);
  CHECK(big[0].max_nonunit == doctest::Approx(0.5 / (1e6 + 1.0)));

  // A = 2I forces every limit eigenvalue to 1/2.
  SaddlePointSystem two;
  std::vector<std::tuple<index_t, index_t, double>> t;
  for (index_t i = 0; i < 6; ++i) t.emplace_back(i, i, 2.0);
  two.A = SparseMatrix::from_triplets(6, 6, std::move(t));
  two.B = SparseMatrix::from_triplets(2, 6, {{0, 0, 1.0}, {1, 1, 1.0}});
  two.f.assign(6, 0.0);
  two.g.assign(2, 0.0);
  const double tiny[] = {1e-10};
  const std::vector<AlphaLimitRow> rows2 = alpha_limit_study(two, tiny);
  CHECK(rows2[0].min_nonunit == doctest::Approx(0.5));
  CHECK(rows2[0].max_nonunit == doctest::Approx(0.5));
}

TEST_CASE("scatter export format") {
  const SaddlePointSystem toy = toy_system();
  const PrecondContext ctx = build_precond(toy, PrecondKind::rehss, 1.0);
  const SpectrumReport rep = preconditioned_spectrum(toy, ctx);
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "sadpre_scatter_test.txt";
  write_scatter(rep, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# toy alpha=1");
  std::getline(in, line);
  CHECK(line == "1 0");
  std::getline(in, line);
  CHECK(line == "0.25 0");
  std::filesystem::remove(path);
}
