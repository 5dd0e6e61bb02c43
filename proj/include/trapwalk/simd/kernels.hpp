#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace trapwalk::simd {

enum class Isa { Scalar, Avx2 };

/// Inner-loop kernels. Every ISA variant must agree with the scalar reference:
/// bit-for-bit for the elementwise kernels, and within a few ulps of the exact
/// value for the reductions (their summation order differs).
struct KernelTable {
  Isa isa;
  std::string_view name;
  /// sum a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// sum a[i] * b[i] with error-free transformations; as accurate as if
  /// evaluated in twice the working precision and rounded once
  double (*dot_compensated)(const double* a, const double* b, std::size_t n);
  /// y[i] += alpha * x[i], multiply then add (no fused rounding)
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// out[i] = 0.5 * (a[i] + b[i])
  void (*half_sum)(const double* a, const double* b, double* out, std::size_t n);
};

const KernelTable& scalar_kernels();

/// AVX2+FMA table when compiled in and supported by the running CPU.
const KernelTable* avx2_kernels();

/// Chosen once per process: the widest supported ISA, unless the environment
/// variable TRAPWALK_SIMD is set to `scalar` (or `avx2`, when available).
const KernelTable& active_kernels();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}

inline double dot_compensated(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot_compensated(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline void half_sum(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  active_kernels().half_sum(a.data(), b.data(), out.data(), out.size());
}

}  // namespace trapwalk::simd
