// Copyright (c) 2026 The sadpre authors
// SPDX-License-Identifier: Apache-2.0

#include "sadpre/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "sadpre/errors.hpp"

namespace sadpre::kernels {

namespace {

struct Table {
  Isa isa;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*rot)(double*, double*, double, double, std::size_t);
  void (*csr_spmv)(std::size_t, const index_t*, const index_t*, const double*,
                   const double*, double*);
};

constexpr Table kScalarTable{Isa::scalar, scalar::dot,  scalar::axpy,
                             scalar::scal, scalar::rot, scalar::csr_spmv};

#if defined(SADPRE_WITH_AVX2)
constexpr Table kAvx2Table{Isa::avx2,  avx2::dot, avx2::axpy,
                           avx2::scal, avx2::rot, avx2::csr_spmv};
#endif

bool cpu_has_avx2() {
#if defined(SADPRE_WITH_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Table pick_table() {
#if defined(SADPRE_WITH_AVX2)
  const char* env = std::getenv("SADPRE_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return kScalarTable;
  if (cpu_has_avx2()) return kAvx2Table;
#endif
  return kScalarTable;
}

Table& table() {
  static Table t = pick_table();
  return t;
}

}  // namespace

Isa active_isa() { return table().isa; }

bool avx2_available() { return cpu_has_avx2(); }

void force_isa(Isa isa) {
  if (isa == Isa::scalar) {
    table() = kScalarTable;
    return;
  }
#if defined(SADPRE_WITH_AVX2)
  if (cpu_has_avx2()) {
    table() = kAvx2Table;
    return;
  }
#endif
  throw Error("requested ISA is not available on this machine");
}

double dot(const double* x, const double* y, std::size_t n) {
  return table().dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  table().axpy(a, x, y, n);
}

void scal(double a, double* x, std::size_t n) { table().scal(a, x, n); }

void rot(double* x, double* y, double c, double s, std::size_t n) {
  table().rot(x, y, c, s, n);
}

void csr_spmv(std::size_t nrows, const index_t* row_offsets,
              const index_t* col_indices, const double* values,
              const double* x, double* y) {
  table().csr_spmv(nrows, row_offsets, col_indices, values, x, y);
}

}  // namespace sadpre::kernels
