// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sadpre/errors.hpp"
#include "sadpre/matrix_market.hpp"

#include "json.hpp"

namespace sadpre {

std::string ProblemRef::name() const {
  if (stokes) return to_string(stokes->flow);
  return "file";
}

SaddlePointSystem load_problem(const ProblemRef& problem) {
  if (problem.stokes) return generate_stokes(*problem.stokes);
  if (problem.path_a.empty() || problem.path_b.empty())
    throw Error("load_problem: need either a Stokes spec or both matrix paths");
  return load_system(problem.path_a, problem.path_b, problem.file_drop_rows);
}

namespace {

void check_config(const ExperimentConfig& cfg) {
  if (cfg.preconditioners.empty())
    throw Error("benchmark: at least one preconditioner is required");
  if (cfg.alphas.empty()) throw Error("benchmark: empty alpha grid");
  for (const double a : cfg.alphas)
    if (a <= 0.0)
      throw InvalidAlpha("benchmark: alpha grid must be strictly positive");
}

double max_err_vs_ones(const BlockVector& u) {
  double e = 0.0;
  for (const double v : u.x) e = std::max(e, std::abs(v - 1.0));
  for (const double v : u.y) e = std::max(e, std::abs(v - 1.0));
  return e;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const ExperimentConfig& cfg) {
  check_config(cfg);
  SaddlePointSystem sys = load_problem(cfg.problem);
  const ValidationReport val = validate(sys);
  if (!val.all_passed())
    throw Error("benchmark: system failed validation\n" + val.summary());
  const BlockVector b = rhs_all_ones(sys);
  const BlockVector x0(sys.n(), sys.m());
  const BlockOp op = [&sys](const BlockVector& v) { return apply_saddle(sys, v); };

  std::vector<BenchRow> rows;
  rows.reserve(cfg.preconditioners.size() * cfg.alphas.size());
  for (const PrecondKind kind : cfg.preconditioners) {
    for (const double alpha : cfg.alphas) {
      const PrecondContext ctx = build_precond(sys, kind, alpha, cfg.inner);
      const auto [u, rep] = gmres(op, &ctx, b, x0, cfg.gmres);
      BenchRow row;
      row.problem = cfg.problem.name();
      row.label = sys.label;
      row.grid = cfg.problem.grid();
      row.kind = kind;
      row.alpha = alpha;
      row.it = rep.restarts;
      row.inner_iters = rep.total_inner_iterations;
      row.relres = rep.final_relres;
      row.seconds = rep.wall_seconds;
      row.termination = rep.termination;
      row.max_err_vs_ones = max_err_vs_ones(u);
      rows.push_back(std::move(row));
    }
  }

  if (!cfg.output.empty()) {
    if (cfg.format == OutputFormat::csv)
      write_rows_csv(rows, cfg.output);
    else
      write_rows_json(rows, cfg.output);
  }
  return rows;
}

std::vector<BenchRow> run_sweep(const ExperimentConfig& cfg) {
  ExperimentConfig inner_cfg = cfg;
  inner_cfg.output.clear();
  const std::vector<BenchRow> rows = run_benchmark(inner_cfg);

  if (!cfg.output.empty()) {
    for (const PrecondKind kind : cfg.preconditioners) {
      std::ofstream it_out(cfg.output + "_" + to_string(kind) + "_it.dat");
      std::ofstream cpu_out(cfg.output + "_" + to_string(kind) + "_cpu.dat");
      if (!it_out || !cpu_out)
        throw Error("run_sweep: cannot open curve files at prefix " + cfg.output);
      for (const BenchRow& row : rows) {
        if (row.kind != kind) continue;
        it_out << std::log10(row.alpha) << " " << row.it << "\n";
        cpu_out << std::log10(row.alpha) << " " << row.seconds << "\n";
      }
    }
  }
  return rows;
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "problem,label,grid,precond,alpha,IT,inner_iters,relres,seconds,"
         "termination\n";
  char buf[64];
  for (const BenchRow& r : rows) {
    out << r.problem << "," << r.label << "," << r.grid << ","
        << to_string(r.kind) << ",";
    std::snprintf(buf, sizeof buf, "%.17g", r.alpha);
    out << buf << "," << r.it << "," << r.inner_iters << ",";
    std::snprintf(buf, sizeof buf, "%.3e", r.relres);
    out << buf << ",";
    std::snprintf(buf, sizeof buf, "%.4f", r.seconds);
    out << buf << "," << to_string(r.termination) << "\n";
  }
  return out.str();
}

void write_rows_csv(const std::vector<BenchRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_rows_csv: cannot open " + path);
  out << rows_to_csv(rows);
  if (!out.good()) throw Error("write_rows_csv: write failed for " + path);
}

void write_rows_json(const std::vector<BenchRow>& rows, const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    arr.push_back({{"problem", r.problem},
                   {"label", r.label},
                   {"grid", r.grid},
                   {"precond", to_string(r.kind)},
                   {"alpha", r.alpha},
                   {"IT", r.it},
                   {"inner_iters", r.inner_iters},
                   {"relres", r.relres},
                   {"seconds", r.seconds},
                   {"termination", to_string(r.termination)}});
  }
  std::ofstream out(path);
  if (!out) throw Error("write_rows_json: cannot open " + path);
  out << arr.dump(2) << "\n";
  if (!out.good()) throw Error("write_rows_json: write failed for " + path);
}

bool TheoryReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string TheoryReport::render() const {
  std::ostringstream out;
  if (!bounds_available) {
    out << "bounds: unavailable (dense limit exceeded); bound-free mode\n";
    return out.str();
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "delta=%.6g theta=%.6g lambda(A)=[%.6g,%.6g] sigma(B)=[%.6g,%.6g]\n"
                "mu=[%.6g,%.6g] alpha_opt_rhss=%.6g rhss_upper=%.6g corollary=%s\n",
                bounds.delta, bounds.theta, bounds.lambda_min_A, bounds.lambda_max_A,
                bounds.sigma_min_B, bounds.sigma_max_B, bounds.mu_m, bounds.mu1,
                bounds.alpha_opt_rhss, bounds.rhss_upper,
                bounds.corollary_holds ? "holds" : "does not hold");
  out << buf;
  for (const auto& c : checks) {
    out << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  return out.str();
}

TheoryReport run_theory_report(const ProblemRef& problem) {
  TheoryReport rep;
  SaddlePointSystem sys = load_problem(problem);
  rhs_all_ones(sys);

  try {
    rep.bounds = compute_bounds(sys);
    rep.bounds_available = true;
  } catch (const DenseLimitExceeded&) {
    rep.bounds_available = false;
    return rep;
  }
  const ConvergenceBounds& bd = rep.bounds;
  char buf[160];

  {
    TheoryCheck c{"rho(Gamma_rehss) < 1 for alpha > max{delta,0}+1e-3", true, ""};
    const double base = std::max(bd.delta, 0.0) + 1e-3;
    for (const double off : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
      const double rho = spectral_radius_gamma(sys, base + off, 1e-6);
      if (!(rho < 1.0)) {
        c.pass = false;
        std::snprintf(buf, sizeof buf, "rho=%.8g at alpha=%.6g", rho, base + off);
        c.detail = buf;
        break;
      }
    }
    rep.checks.push_back(c);
  }
  {
    TheoryCheck c{"delta <= theta", bd.delta <= bd.theta, ""};
    std::snprintf(buf, sizeof buf, "delta=%.6g theta=%.6g", bd.delta, bd.theta);
    c.detail = buf;
    rep.checks.push_back(c);
  }
  {
    TheoryCheck c{"corollary: rho < 1 for every alpha when lambda_min(A) > kappa(B)^2/2",
                  true, ""};
    if (!bd.corollary_holds) {
      c.detail = "hypothesis not satisfied on this system; skipped";
    } else {
      for (const double alpha : {1e-4, 1.0, 1e4}) {
        const double rho = spectral_radius_gamma(sys, alpha, 1e-6);
        if (!(rho < 1.0)) {
          c.pass = false;
          std::snprintf(buf, sizeof buf, "rho=%.8g at alpha=%.6g", rho, alpha);
          c.detail = buf;
          break;
        }
      }
    }
    rep.checks.push_back(c);
  }
  {
    TheoryCheck c{"rhss converges inside (0, 2/mu1) and alpha_opt is best", true, ""};
    const double inside = rhss_radius(sys, 0.9 * bd.rhss_upper);
    if (!(inside < 1.0)) {
      c.pass = false;
      std::snprintf(buf, sizeof buf, "rho=%.8g at 0.9*upper", inside);
      c.detail = buf;
    } else {
      const double at_opt = rhss_radius(sys, bd.alpha_opt_rhss);
      for (const double frac : {0.15, 0.35, 0.55, 0.75, 0.95}) {
        const double rho = rhss_radius(sys, frac * bd.rhss_upper);
        if (at_opt > rho + 1e-8) {
          c.pass = false;
          std::snprintf(buf, sizeof buf, "rho(opt)=%.8g > rho(%.2g*upper)=%.8g",
                        at_opt, frac, rho);
          c.detail = buf;
          break;
        }
      }
    }
    rep.checks.push_back(c);
  }
  {
    const MinpolyResult mp = minpoly_check(sys, 1.0);
    TheoryCheck c{"Krylov dimension bound m+1", mp.pass, ""};
    std::snprintf(buf, sizeof buf, "%ld iterations, bound %ld", mp.iterations,
                  mp.bound);
    c.detail = buf;
    rep.checks.push_back(c);
  }
  {
    TheoryCheck c{"nonunit eigenvalues enter [1/lambda_max(A), 1/lambda_min(A)] as alpha -> 0",
                  true, ""};
    const double alphas_study[] = {1e-10};
    const std::vector<AlphaLimitRow> rows = alpha_limit_study(sys, alphas_study);
    const AlphaLimitRow& r = rows.front();
    if (r.min_nonunit < r.lo_bound - 1e-4 || r.max_nonunit > r.hi_bound + 1e-4) {
      c.pass = false;
    }
    std::snprintf(buf, sizeof buf, "eigs in [%.6g, %.6g], interval [%.6g, %.6g]",
                  r.min_nonunit, r.max_nonunit, r.lo_bound, r.hi_bound);
    c.detail = buf;
    rep.checks.push_back(c);
  }
  return rep;
}

void export_spectrum(const ProblemRef& problem, PrecondKind kind, double alpha,
                     const std::string& path) {
  SaddlePointSystem sys = load_problem(problem);
  rhs_all_ones(sys);
  const PrecondContext ctx = build_precond(sys, kind, alpha);
  write_scatter(preconditioned_spectrum(sys, ctx), path);

  const PrecondContext none = build_precond(sys, PrecondKind::none, 1.0);
  const std::filesystem::path p(path);
  std::filesystem::path unpre = p.parent_path() / p.stem();
  unpre += "_unpre";
  unpre += p.extension();
  write_scatter(preconditioned_spectrum(sys, none), unpre);
}

}  // namespace sadpre
