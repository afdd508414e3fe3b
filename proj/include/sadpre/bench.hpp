// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sadpre/gmres.hpp"
#include "sadpre/spectrum.hpp"
#include "sadpre/stokes.hpp"
#include "sadpre/theory.hpp"

namespace sadpre {

/// Either a generated MAC Stokes problem or a pair of Matrix Market files.
struct ProblemRef {
  std::optional<StokesSpec> stokes;
  std::string path_a;
  std::string path_b;
  index_t file_drop_rows = 2;

  std::string name() const;
  int grid() const { return stokes ? stokes->cells_per_side : 0; }
};

/// Generates or loads the system (right-hand side not yet overwritten).
SaddlePointSystem load_problem(const ProblemRef& problem);

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  ProblemRef problem;
  std::vector<PrecondKind> preconditioners{PrecondKind::rehss, PrecondKind::rhss,
                                           PrecondKind::hss};
  std::vector<double> alphas{1e-4, 1e-2, 1.0, 1e2};
  GmresConfig gmres;
  InnerStrategy inner;
  std::string output;  // empty: no file written
  OutputFormat format = OutputFormat::csv;
};

struct BenchRow {
  std::string problem;
  std::string label;
  int grid = 0;
  PrecondKind kind = PrecondKind::none;
  double alpha = 0.0;
  int it = 0;  // GMRES(m) restarts
  long inner_iters = 0;
  double relres = 0.0;
  double seconds = 0.0;
  Termination termination = Termination::breakdown;
  double max_err_vs_ones = 0.0;  // diagnostic, not part of the CSV schema
};

/// One GMRES run per (preconditioner, alpha) cell, preconditioner-major,
/// from a zero initial guess on the all-ones right-hand side.
std::vector<BenchRow> run_benchmark(const ExperimentConfig& cfg);

/// run_benchmark over a dense alpha grid; when cfg.output is set, writes
/// "<output>_<kind>_it.dat" and "<output>_<kind>_cpu.dat" curve files with
/// "log10(alpha) value" lines.
std::vector<BenchRow> run_sweep(const ExperimentConfig& cfg);

// CSV schema: problem,label,grid,precond,alpha,IT,inner_iters,relres,seconds,
// termination. JSON mirrors it. Rows are deterministic across runs for a
// fixed config except the seconds column.
void write_rows_csv(const std::vector<BenchRow>& rows, const std::string& path);
void write_rows_json(const std::vector<BenchRow>& rows, const std::string& path);
std::string rows_to_csv(const std::vector<BenchRow>& rows);

struct TheoryCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TheoryReport {
  bool bounds_available = false;
  ConvergenceBounds bounds;
  std::vector<TheoryCheck> checks;
  bool all_pass() const;
  std::string render() const;
};

/// Computes the convergence bounds and verifies each of them numerically
/// (spectral radii by power iteration, the Krylov dimension bound, the
/// small-alpha eigenvalue interval). Oversize problems degrade to a
/// bound-free report.
TheoryReport run_theory_report(const ProblemRef& problem);

/// Writes the preconditioned-operator scatter to `path` and the plain
/// operator scatter next to it ("<stem>_unpre<ext>").
void export_spectrum(const ProblemRef& problem, PrecondKind kind, double alpha,
                     const std::string& path);

}  // namespace sadpre
