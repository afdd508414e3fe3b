// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "sadpre/system.hpp"

namespace sadpre {

/// Matrix Market coordinate files, 1-based indices, real field. Values are
/// written with 17 significant digits so write/read round trips are
/// bit-exact. Symmetric files store the lower triangle and are expanded on
/// read. Complex and pattern fields are rejected (UnsupportedField); any
/// malformed content raises ParseError with its line number.
void mm_write(const SparseMatrix& m, const std::filesystem::path& path);
SparseMatrix mm_read(const std::filesystem::path& path);

/// Reads A and B, removes the first drop_rows rows of B, builds the
/// all-ones right-hand side and validates. Rank failures come back as
/// RankRepairFailed with a hint to increase drop_rows.
SaddlePointSystem load_system(const std::filesystem::path& path_a,
                              const std::filesystem::path& path_b,
                              index_t drop_rows);

}  // namespace sadpre
