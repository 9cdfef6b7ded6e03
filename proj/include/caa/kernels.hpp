#pragma once

// Data-parallel inner loops of the graph build and the forward/backward
// passes. Every routine has a scalar reference implementation; an AVX2/FMA
// variant is compiled on x86-64 and picked at runtime when the CPU supports
// it. Variants agree to rounding (tests/kernels_test.cpp pins the bounds).

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>

namespace caa::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  const char* name;
  /// out[i] = table[idx[i]]
  void (*gather)(const double* table, const std::uint32_t* idx, std::size_t n, double* out);
  /// CSR sparse matrix-vector product: y[r] = sum_{e in [off[r], off[r+1])} vals[e] * x[cols[e]]
  void (*csr_gather_dot)(const std::uint32_t* offsets, std::size_t rows, const std::uint32_t* cols,
                         const double* vals, const double* x, double* y);
  /// out[i] = a[i] * b[i]
  void (*multiply)(const double* a, const double* b, std::size_t n, double* out);
  double (*sum)(const double* a, std::size_t n);
  /// Largest entry of a nonnegative array; 0 when empty.
  double (*max)(const double* a, std::size_t n);
  /// a[i] *= s
  void (*scale)(double* a, std::size_t n, double s);
  /// out (n x dim) = in (n x dim) * m (dim x dim), all row-major
  void (*rows_times_matrix)(const double* in, std::size_t n, const double* m, std::size_t dim,
                            double* out);
  /// out[j] = sum_r w[r] * rows[r * dim + j]
  void (*weighted_row_sum)(const double* w, const double* rows, std::size_t n, std::size_t dim,
                           double* out);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not built or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

const KernelTable& table(Backend backend);
bool available(Backend backend);

/// Table used by the library. Defaults to the fastest available backend.
const KernelTable& active();
Backend active_backend();

/// Overrides the backend for the whole process (benchmarks and equivalence
/// tests). Throws std::invalid_argument if the backend is unavailable.
void select(Backend backend);

// Span front-ends over the active table.

inline void gather(std::span<const double> table, std::span<const std::uint32_t> idx,
                   std::span<double> out) {
  assert(out.size() == idx.size());
  active().gather(table.data(), idx.data(), idx.size(), out.data());
}

inline void csr_gather_dot(std::span<const std::uint32_t> offsets, std::span<const std::uint32_t> cols,
                           std::span<const double> vals, std::span<const double> x,
                           std::span<double> y) {
  assert(offsets.size() == y.size() + 1 && cols.size() == vals.size());
  active().csr_gather_dot(offsets.data(), y.size(), cols.data(), vals.data(), x.data(), y.data());
}

inline void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  active().multiply(a.data(), b.data(), a.size(), out.data());
}

inline double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }
inline double max(std::span<const double> a) { return active().max(a.data(), a.size()); }
inline void scale(std::span<double> a, double s) { active().scale(a.data(), a.size(), s); }

}  // namespace caa::kernels
