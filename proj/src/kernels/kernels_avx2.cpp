// AVX2/FMA variant of the structure-constant contraction. Compiled with
// -mavx2 -mfma (see CMakeLists); dispatch stays behind a cpuid check.

#include "divalg/kernels.hpp"

#if defined(DIVALG_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace divalg::kernels {

#if defined(DIVALG_HAVE_AVX2)

namespace {

// n divisible by 4: broadcast x_i*y_j, FMA along the k-contiguous fibre.
void product_avx2_impl(const double* c, int n, const double* x,
                       const double* y, double* out) {
  if (n % 4 != 0) {
    product_scalar(c, n, x, y, out);
    return;
  }
  const int blocks = n / 4;
  __m256d acc[2];  // n <= 8 in practice; spill path below for larger n
  if (blocks <= 2) {
    for (int b = 0; b < blocks; ++b) acc[b] = _mm256_setzero_pd();
    for (int i = 0; i < n; ++i) {
      const double xi = x[i];
      const double* ci = c + static_cast<long>(i) * n * n;
      for (int j = 0; j < n; ++j) {
        const __m256d p = _mm256_set1_pd(xi * y[j]);
        const double* cij = ci + static_cast<long>(j) * n;
        for (int b = 0; b < blocks; ++b)
          acc[b] = _mm256_fmadd_pd(p, _mm256_loadu_pd(cij + 4 * b), acc[b]);
      }
    }
    for (int b = 0; b < blocks; ++b) _mm256_storeu_pd(out + 4 * b, acc[b]);
    return;
  }
  for (int k = 0; k < n; ++k) out[k] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = x[i];
    const double* ci = c + static_cast<long>(i) * n * n;
    for (int j = 0; j < n; ++j) {
      const __m256d p = _mm256_set1_pd(xi * y[j]);
      const double* cij = ci + static_cast<long>(j) * n;
      for (int b = 0; b < blocks; ++b) {
        __m256d v = _mm256_loadu_pd(out + 4 * b);
        v = _mm256_fmadd_pd(p, _mm256_loadu_pd(cij + 4 * b), v);
        _mm256_storeu_pd(out + 4 * b, v);
      }
    }
  }
}

}  // namespace

ProductFn product_avx2() {
  static const ProductFn fn = [] {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
      return &product_avx2_impl;
    return static_cast<ProductFn>(nullptr);
  }();
  return fn;
}

#else

ProductFn product_avx2() { return nullptr; }

#endif

}  // namespace divalg::kernels
