#pragma once

namespace divalg::kernels {

// Trilinear structure-constant contraction, the inner loop of every product:
//   out[k] = sum_{i,j} x[i] y[j] c[(i*n + j)*n + k]
// with c stored k-contiguous. out must not alias x or y.
using ProductFn = void (*)(const double* c, int n, const double* x,
                           const double* y, double* out);

// Scalar reference kernel. Ground truth for the SIMD variants.
void product_scalar(const double* c, int n, const double* x, const double* y,
                    double* out);

// AVX2+FMA variant; null when not compiled in or the CPU lacks support.
ProductFn product_avx2();

// Runtime-selected kernel (AVX2 when available, scalar otherwise).
ProductFn product_active();

// Name of the selected kernel, for diagnostics ("scalar", "avx2").
const char* active_name();

}  // namespace divalg::kernels
