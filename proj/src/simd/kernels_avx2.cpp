// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "trapwalk/simd/kernels.hpp"

namespace trapwalk::simd {

namespace {

inline double hsum_ordered(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum_ordered(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

struct Compensated {
  __m256d p = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();

  void add(__m256d x, __m256d y) {
    const __m256d h = _mm256_mul_pd(x, y);
    const __m256d r = _mm256_fmsub_pd(x, y, h);
    const __m256d s = _mm256_add_pd(p, h);
    const __m256d z = _mm256_sub_pd(s, p);
    const __m256d e = _mm256_add_pd(_mm256_sub_pd(p, _mm256_sub_pd(s, z)), _mm256_sub_pd(h, z));
    p = s;
    c = _mm256_add_pd(c, _mm256_add_pd(e, r));
  }
};

// Error-free sum of a into (p, c).
inline void two_sum_into(double& p, double& c, double a) {
  const double s = p + a;
  const double z = s - p;
  c += (p - (s - z)) + (a - z);
  p = s;
}

double dot_compensated_avx2(const double* a, const double* b, std::size_t n) {
  Compensated k0, k1;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    k0.add(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    k1.add(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
  }
  for (; i + 4 <= n; i += 4) k0.add(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));

  alignas(32) double lp[8];
  alignas(32) double lc[8];
  _mm256_store_pd(lp, k0.p);
  _mm256_store_pd(lp + 4, k1.p);
  _mm256_store_pd(lc, k0.c);
  _mm256_store_pd(lc + 4, k1.c);
  double p = 0.0;
  double c = 0.0;
  for (int l = 0; l < 8; ++l) {
    two_sum_into(p, c, lp[l]);
    c += lc[l];
  }
  for (; i < n; ++i) {
    const double h = a[i] * b[i];
    const double r = std::fma(a[i], b[i], -h);
    two_sum_into(p, c, h);
    c += r;
  }
  return p + c;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = alpha * x[i];
    y[i] = y[i] + prod;
  }
}

void half_sum_avx2(const double* a, const double* b, double* out, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(half, s));
  }
  for (; i < n; ++i) out[i] = 0.5 * (a[i] + b[i]);
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{Isa::Avx2, "avx2", dot_avx2, dot_compensated_avx2, axpy_avx2,
                                 half_sum_avx2};
  return table;
}

}  // namespace trapwalk::simd
