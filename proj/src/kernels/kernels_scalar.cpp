#include <algorithm>

#include "caa/kernels.hpp"

namespace caa::kernels {
namespace {

void gather(const double* table, const std::uint32_t* idx, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = table[idx[i]];
}

void csr_gather_dot(const std::uint32_t* offsets, std::size_t rows, const std::uint32_t* cols,
                    const double* vals, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (std::uint32_t e = offsets[r]; e < offsets[r + 1]; ++e) acc += vals[e] * x[cols[e]];
    y[r] = acc;
  }
}

void multiply(const double* a, const double* b, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double sum(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

double max(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

void scale(double* a, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void rows_times_matrix(const double* in, std::size_t n, const double* m, std::size_t dim, double* out) {
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = in + r * dim;
    double* dst = out + r * dim;
    std::fill(dst, dst + dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      const double w = row[i];
      const double* mi = m + i * dim;
      for (std::size_t j = 0; j < dim; ++j) dst[j] += w * mi[j];
    }
  }
}

void weighted_row_sum(const double* w, const double* rows, std::size_t n, std::size_t dim, double* out) {
  std::fill(out, out + dim, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const double wr = w[r];
    if (wr == 0.0) continue;
    for (std::size_t j = 0; j < dim; ++j) out[j] += wr * rows[r * dim + j];
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{"scalar",  gather, csr_gather_dot,    multiply,
                             sum,       max,    scale,             rows_times_matrix,
                             weighted_row_sum};
  return t;
}

}  // namespace caa::kernels
