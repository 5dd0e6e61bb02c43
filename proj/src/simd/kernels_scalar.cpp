#include <cmath>

#include "trapwalk/simd/kernels.hpp"

namespace trapwalk::simd {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Ogita-Rump-Oishi Dot2.
double dot_compensated_scalar(const double* a, const double* b, std::size_t n) {
  double p = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = a[i] * b[i];
    const double r = std::fma(a[i], b[i], -h);
    const double s = p + h;
    const double z = s - p;
    const double e = (p - (s - z)) + (h - z);
    p = s;
    c += e + r;
  }
  return p + c;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void half_sum_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (a[i] + b[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, "scalar", dot_scalar, dot_compensated_scalar,
                                 axpy_scalar, half_sum_scalar};
  return table;
}

}  // namespace trapwalk::simd
