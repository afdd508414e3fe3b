// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

// Hot inner loops used by the sparse/dense kernels and the solvers. Each
// operation has a scalar reference implementation and, on x86-64 builds, an
// AVX2+FMA variant. The active variant is picked once at startup from CPUID
// (override with force_isa() or the SADPRE_ISA environment variable, values
// "scalar"/"avx2"). SIMD variants use a fixed lane-combine order, so output
// is deterministic run to run for a given ISA.

namespace sadpre::kernels {

using index_t = std::int32_t;

enum class Isa { scalar, avx2 };

/// ISA the dispatcher currently routes to.
Isa active_isa();

/// True when the AVX2 variant is both compiled in and supported by this CPU.
bool avx2_available();

/// Force a specific ISA (throws Error if unavailable). Not thread safe;
/// intended for tests and benchmarking.
void force_isa(Isa isa);

double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
/// Plane rotation: x_i <- c*x_i + s*y_i,  y_i <- c*y_i - s*x_i.
void rot(double* x, double* y, double c, double s, std::size_t n);
/// y = M x for a CSR matrix given by (row_offsets, col_indices, values).
void csr_spmv(std::size_t nrows, const index_t* row_offsets,
              const index_t* col_indices, const double* values,
              const double* x, double* y);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
void rot(double* x, double* y, double c, double s, std::size_t n);
void csr_spmv(std::size_t nrows, const index_t* row_offsets,
              const index_t* col_indices, const double* values,
              const double* x, double* y);
}  // namespace scalar

#if defined(SADPRE_WITH_AVX2)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
void rot(double* x, double* y, double c, double s, std::size_t n);
void csr_spmv(std::size_t nrows, const index_t* row_offsets,
              const index_t* col_indices, const double* values,
              const double* x, double* y);
}  // namespace avx2
#endif

}  // namespace sadpre::kernels

namespace sadpre {
using index_t = kernels::index_t;
}
