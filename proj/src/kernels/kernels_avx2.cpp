// Compiled with -mavx2 -mfma; only reached through avx2_table() after a
// runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <vector>

#include "caa/kernels.hpp"

namespace caa::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

// Lane mask for the first `k` (< 4) lanes.
inline __m256i tail_mask(std::size_t k) {
  return _mm256_setr_epi64x(k > 0 ? -1 : 0, k > 1 ? -1 : 0, k > 2 ? -1 : 0, 0);
}

inline __m256d gather4(const double* table, const std::uint32_t* idx) {
  const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
  return _mm256_i32gather_pd(table, vi, 8);
}

void gather(const double* table, const std::uint32_t* idx, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, gather4(table, idx + i));
  for (; i < n; ++i) out[i] = table[idx[i]];
}

// Short rows (the common case: at most Y edges per parent) are handled by
// first forming all edge products with 4-wide gathers and then reducing each
// row's segment in order. Long rows use a per-row FMA accumulator.
void csr_gather_dot(const std::uint32_t* offsets, std::size_t rows, const std::uint32_t* cols,
                    const double* vals, const double* x, double* y) {
  const std::size_t nnz = offsets[rows] - offsets[0];
  if (rows == 0) return;
  if (nnz < 8 * rows) {
    thread_local std::vector<double> products;
    products.resize(nnz);
    const std::uint32_t base = offsets[0];
    std::size_t e = 0;
    for (; e + 4 <= nnz; e += 4) {
      const __m256d xv = gather4(x, cols + base + e);
      _mm256_storeu_pd(products.data() + e, _mm256_mul_pd(_mm256_loadu_pd(vals + base + e), xv));
    }
    for (; e < nnz; ++e) products[e] = vals[base + e] * x[cols[base + e]];
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::uint32_t k = offsets[r]; k < offsets[r + 1]; ++k) acc += products[k - base];
      y[r] = acc;
    }
    return;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint32_t e = offsets[r];
    const std::uint32_t end = offsets[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; e + 4 <= end; e += 4)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(vals + e), gather4(x, cols + e), acc);
    double s = hsum(acc);
    for (; e < end; ++e) s += vals[e] * x[cols[e]];
    y[r] = s;
  }
}

void multiply(const double* a, const double* b, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

double sum(const double* a, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_add_pd(s0, _mm256_loadu_pd(a + i));
    s1 = _mm256_add_pd(s1, _mm256_loadu_pd(a + i + 4));
  }
  for (; i + 4 <= n; i += 4) s0 = _mm256_add_pd(s0, _mm256_loadu_pd(a + i));
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += a[i];
  return s;
}

double max(const double* a, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_loadu_pd(a + i));
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, a[i]);
  return r;
}

void scale(double* a, std::size_t n, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  for (; i < n; ++i) a[i] *= s;
}

void rows_times_matrix(const double* in, std::size_t n, const double* m, std::size_t dim, double* out) {
  const std::size_t full = dim / 4 * 4;
  const __m256i mask = tail_mask(dim - full);
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = in + r * dim;
    double* dst = out + r * dim;
    for (std::size_t j = 0; j < full; j += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t i = 0; i < dim; ++i)
        acc = _mm256_fmadd_pd(_mm256_set1_pd(row[i]), _mm256_loadu_pd(m + i * dim + j), acc);
      _mm256_storeu_pd(dst + j, acc);
    }
    if (full < dim) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t i = 0; i < dim; ++i)
        acc = _mm256_fmadd_pd(_mm256_set1_pd(row[i]), _mm256_maskload_pd(m + i * dim + full, mask), acc);
      _mm256_maskstore_pd(dst + full, mask, acc);
    }
  }
}

void weighted_row_sum(const double* w, const double* rows, std::size_t n, std::size_t dim, double* out) {
  const std::size_t full = dim / 4 * 4;
  const __m256i mask = tail_mask(dim - full);
  for (std::size_t j = 0; j < full; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t r = 0; r < n; ++r)
      acc = _mm256_fmadd_pd(_mm256_set1_pd(w[r]), _mm256_loadu_pd(rows + r * dim + j), acc);
    _mm256_storeu_pd(out + j, acc);
  }
  if (full < dim) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t r = 0; r < n; ++r)
      acc = _mm256_fmadd_pd(_mm256_set1_pd(w[r]), _mm256_maskload_pd(rows + r * dim + full, mask), acc);
    _mm256_maskstore_pd(out + full, mask, acc);
  }
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable t{"avx2",  gather, csr_gather_dot,    multiply,
                             sum,     max,    scale,             rows_times_matrix,
                             weighted_row_sum};
  return t;
}

}  // namespace caa::kernels
