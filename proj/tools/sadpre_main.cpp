// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

// Benchmark and verification CLI for the saddle-point preconditioner
// library. Subcommands: bench, sweep, spectrum, theory, gen.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sadpre/bench.hpp"
#include "sadpre/errors.hpp"
#include "sadpre/matrix_market.hpp"

namespace {

struct ProblemFlags {
  std::string flow = "lid";
  int n = 16;
  int drop_rows = -1;  // -1: default (1 generated, 2 for files)
  std::string mat_a;
  std::string mat_b;

  sadpre::ProblemRef resolve() const {
    sadpre::ProblemRef ref;
    if (!mat_a.empty() || !mat_b.empty()) {
      ref.path_a = mat_a;
      ref.path_b = mat_b;
      ref.file_drop_rows = drop_rows < 0 ? 2 : drop_rows;
    } else {
      sadpre::StokesSpec spec;
      spec.flow = sadpre::flow_from_string(flow);
      spec.cells_per_side = n;
      spec.drop_rows = drop_rows < 0 ? 1 : drop_rows;
      ref.stokes = spec;
    }
    return ref;
  }
};

void add_problem_flags(CLI::App* cmd, ProblemFlags* p) {
  cmd->add_option("--problem", p->flow, "Generated flow: lid, channel or colliding")
      ->capture_default_str();
  cmd->add_option("--n", p->n, "Cells per side of the generated MAC grid")
      ->capture_default_str();
  cmd->add_option("--drop-rows", p->drop_rows,
                  "Leading pressure rows dropped to restore full rank "
                  "(default 1 generated, 2 for files)");
  cmd->add_option("--matA", p->mat_a, "Matrix Market file for block A");
  cmd->add_option("--matB", p->mat_b, "Matrix Market file for block B");
}

std::vector<sadpre::PrecondKind> parse_preconds(const std::vector<std::string>& names) {
  std::vector<sadpre::PrecondKind> kinds;
  for (const std::string& s : names) kinds.push_back(sadpre::precond_kind_from_string(s));
  return kinds;
}

void print_rows(const std::vector<sadpre::BenchRow>& rows) {
  std::printf("%-10s %5s %-6s %10s %6s %8s %10s %9s %s\n", "problem", "grid",
              "prec", "alpha", "IT", "inner", "relres", "seconds", "term");
  for (const auto& r : rows) {
    std::printf("%-10s %5d %-6s %10.3g %6d %8ld %10.2e %9.3f %s\n",
                r.problem.c_str(), r.grid, sadpre::to_string(r.kind).c_str(),
                r.alpha, r.it, r.inner_iters, r.relres, r.seconds,
                sadpre::to_string(r.termination).c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle-point solver benchmarks with HSS-family preconditioners"};
  app.require_subcommand(1);

  // ---- bench ----
  ProblemFlags bench_problem;
  std::vector<std::string> precond_names{"rehss", "rhss", "hss"};
  std::vector<double> alphas{1e-4, 1e-2, 1.0, 1e2};
  bool include_alpha_1e6 = false;
  sadpre::GmresConfig gmres_cfg;
  std::string inner_mode = "direct";
  std::string out_path;
  std::string format = "csv";

  CLI::App* bench = app.add_subcommand("bench", "Run the GMRES(m) comparison grid");
  add_problem_flags(bench, &bench_problem);
  bench->add_option("--precond", precond_names, "Preconditioners (hss,rhss,rehss,none)")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--alpha", alphas, "Alpha grid")->delimiter(',');
  bench->add_flag("--include-alpha-1e-6", include_alpha_1e6,
                  "Prepend alpha = 1e-6 to the grid");
  bench->add_option("--restart", gmres_cfg.restart, "GMRES restart length")
      ->capture_default_str();
  bench->add_option("--tol", gmres_cfg.rel_tol, "Relative stopping tolerance")
      ->capture_default_str();
  bench->add_option("--max-restarts", gmres_cfg.max_restarts, "Restart budget")
      ->capture_default_str();
  bench->add_option("--max-seconds", gmres_cfg.max_seconds, "Wall-clock budget")
      ->capture_default_str();
  bench->add_option("--inner", inner_mode, "Inner SPD solves: direct or cg")
      ->capture_default_str();
  bench->add_flag("--literal-stop-rule", gmres_cfg.literal_stop_rule,
                  "Stop on ||P r|| <= tol ||P b|| instead of ||P^{-1} r||");
  bench->add_option("--out", out_path, "Output file");
  bench->add_option("--format", format, "csv or json")->capture_default_str();

  // ---- sweep ----
  ProblemFlags sweep_problem;
  std::vector<double> log_range{-6.0, 2.0, 17.0};
  CLI::App* sweep = app.add_subcommand("sweep", "IT/CPU curves over a log-alpha grid");
  add_problem_flags(sweep, &sweep_problem);
  sweep->add_option("--alpha-log-range", log_range,
                    "lo hi steps: log10-spaced alpha grid")
      ->expected(3);
  sweep->add_option("--precond", precond_names, "Preconditioners")->delimiter(',');
  sweep->add_option("--restart", gmres_cfg.restart, "GMRES restart length");
  sweep->add_option("--tol", gmres_cfg.rel_tol, "Relative stopping tolerance");
  sweep->add_option("--max-restarts", gmres_cfg.max_restarts, "Restart budget");
  sweep->add_option("--max-seconds", gmres_cfg.max_seconds, "Wall-clock budget");
  sweep->add_option("--inner", inner_mode, "Inner SPD solves: direct or cg");
  sweep->add_option("--out", out_path, "Curve file prefix");

  // ---- spectrum ----
  ProblemFlags spec_problem;
  std::string spec_precond = "rehss";
  double spec_alpha = 1.0;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Export eigenvalue scatter files");
  add_problem_flags(spectrum, &spec_problem);
  spectrum->add_option("--precond", spec_precond, "Preconditioner kind")
      ->capture_default_str();
  spectrum->add_option("--alpha", spec_alpha, "Alpha")->capture_default_str();
  spectrum->add_option("--out", out_path, "Scatter file path")->required();

  // ---- theory ----
  ProblemFlags theory_problem;
  CLI::App* theory = app.add_subcommand("theory", "Convergence bounds and checks");
  add_problem_flags(theory, &theory_problem);

  // ---- gen ----
  ProblemFlags gen_problem;
  std::string out_a, out_b;
  CLI::App* gen = app.add_subcommand("gen", "Export the generated blocks as Matrix Market");
  add_problem_flags(gen, &gen_problem);
  gen->add_option("--out-A", out_a, "Output path for A")->required();
  gen->add_option("--out-B", out_b, "Output path for B")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      sadpre::ExperimentConfig cfg;
      cfg.problem = bench_problem.resolve();
      cfg.preconditioners = parse_preconds(precond_names);
      cfg.alphas = alphas;
      if (include_alpha_1e6) cfg.alphas.insert(cfg.alphas.begin(), 1e-6);
      cfg.gmres = gmres_cfg;
      if (inner_mode == "cg")
        cfg.inner.mode = sadpre::InnerStrategy::Mode::cg;
      else if (inner_mode != "direct")
        throw sadpre::Error("--inner must be direct or cg");
      cfg.output = out_path;
      if (format == "json")
        cfg.format = sadpre::OutputFormat::json;
      else if (format != "csv")
        throw sadpre::Error("--format must be csv or json");
      print_rows(sadpre::run_benchmark(cfg));
    } else if (sweep->parsed()) {
      sadpre::ExperimentConfig cfg;
      cfg.problem = sweep_problem.resolve();
      cfg.preconditioners = parse_preconds(precond_names);
      const int steps = static_cast<int>(log_range[2]);
      if (steps < 1) throw sadpre::Error("sweep: need at least one grid point");
      cfg.alphas.clear();
      for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? log_range[0]
                                    : log_range[0] + (log_range[1] - log_range[0]) *
                                                         i / (steps - 1);
        cfg.alphas.push_back(std::pow(10.0, t));
      }
      cfg.gmres = gmres_cfg;
      if (inner_mode == "cg") cfg.inner.mode = sadpre::InnerStrategy::Mode::cg;
      cfg.output = out_path;
      print_rows(sadpre::run_sweep(cfg));
    } else if (spectrum->parsed()) {
      sadpre::export_spectrum(spec_problem.resolve(),
                              sadpre::precond_kind_from_string(spec_precond),
                              spec_alpha, out_path);
      std::cout << "wrote " << out_path << " (and the _unpre companion)\n";
    } else if (theory->parsed()) {
      const sadpre::TheoryReport rep = sadpre::run_theory_report(theory_problem.resolve());
      std::cout << rep.render();
      if (rep.bounds_available && !rep.all_pass()) return 1;
    } else if (gen->parsed()) {
      const sadpre::SaddlePointSystem sys =
          sadpre::generate_stokes(*gen_problem.resolve().stokes);
      sadpre::mm_write(sys.A, out_a);
      sadpre::mm_write(sys.B, out_b);
      std::cout << "wrote " << out_a << " (" << sys.n() << "x" << sys.n() << ") and "
                << out_b << " (" << sys.m() << "x" << sys.n() << ")\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
