// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sadpre/errors.hpp"

namespace sadpre {

void mm_write(const SparseMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("mm_write: cannot open " + path.string());
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.nrows << " " << m.ncols << " " << m.nnz() << "\n";
  char buf[96];
  for (index_t i = 0; i < m.nrows; ++i) {
    for (index_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g", i + 1, m.col_indices[k] + 1,
                    m.values[k]);
      out << buf << "\n";
    }
  }
  if (!out.good()) throw Error("mm_write: write failed for " + path.string());
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

SparseMatrix mm_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("mm_read: cannot open " + path.string());

  long lineno = 0;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++lineno;

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket") throw ParseError("missing MatrixMarket banner", lineno);
  if (lower(object) != "matrix") throw ParseError("unsupported object: " + object, lineno);
  if (lower(format) != "coordinate")
    throw ParseError("unsupported format: " + format, lineno);
  field = lower(field);
  if (field == "complex" || field == "pattern")
    throw UnsupportedField("mm_read: field '" + field + "' is not supported");
  if (field != "real" && field != "integer")
    throw ParseError("unknown field: " + field, lineno);
  symmetry = lower(symmetry);
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general")
    throw UnsupportedField("mm_read: symmetry '" + symmetry + "' is not supported");

  // Skip comments and blanks before the size line.
  index_t nrows = 0, ncols = 0;
  long nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing size line", lineno + 1);
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream size(line);
    if (!(size >> nrows >> ncols >> nnz)) throw ParseError("bad size line", lineno);
    break;
  }
  if (nrows < 0 || ncols < 0 || nnz < 0) throw ParseError("negative sizes", lineno);

  std::vector<std::tuple<index_t, index_t, double>> triplets;
  std::vector<long> lines;
  triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long k = 0; k < nnz;) {
    if (!std::getline(in, line))
      throw ParseError("unexpected end of file, expected " + std::to_string(nnz) +
                           " entries",
                       lineno + 1);
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    long i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v)) throw ParseError("bad entry", lineno);
    if (i < 1 || i > nrows || j < 1 || j > ncols)
      throw ParseError("entry index out of range", lineno);
    triplets.emplace_back(static_cast<index_t>(i - 1), static_cast<index_t>(j - 1), v);
    lines.push_back(lineno);
    if (symmetric && i != j) {
      triplets.emplace_back(static_cast<index_t>(j - 1), static_cast<index_t>(i - 1), v);
      lines.push_back(lineno);
    }
    ++k;
  }

  // Report duplicates with the offending line.
  std::vector<std::size_t> order(triplets.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(std::get<0>(triplets[a]), std::get<1>(triplets[a])) <
           std::tie(std::get<0>(triplets[b]), std::get<1>(triplets[b]));
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& a = triplets[order[k - 1]];
    const auto& b = triplets[order[k]];
    if (std::get<0>(a) == std::get<0>(b) && std::get<1>(a) == std::get<1>(b))
      throw ParseError("duplicate entry", lines[order[k]]);
  }

  return SparseMatrix::from_triplets(nrows, ncols, std::move(triplets));
}

SaddlePointSystem load_system(const std::filesystem::path& path_a,
                              const std::filesystem::path& path_b,
                              index_t drop_rows) {
  SaddlePointSystem sys;
  sys.A = mm_read(path_a);
  sys.B = drop_leading_rows(mm_read(path_b), drop_rows);
  sys.f.assign(sys.A.nrows, 0.0);
  sys.g.assign(sys.B.nrows, 0.0);
  sys.label = "file:" + path_a.filename().string() + "," +
              path_b.filename().string() + " drop=" + std::to_string(drop_rows);

  const ValidationReport rep = validate(sys);
  if (!rep.all_passed()) {
    for (const auto& c : rep.checks) {
      if (!c.passed && c.name.rfind("B full row rank", 0) == 0)
        throw RankRepairFailed("load_system: B is rank deficient after dropping " +
                               std::to_string(drop_rows) +
                               " rows; increase drop_rows (" + c.detail + ")");
    }
    throw Error("load_system: validation failed\n" + rep.summary());
  }
  rhs_all_ones(sys);
  return sys;
}

}  // namespace sadpre
