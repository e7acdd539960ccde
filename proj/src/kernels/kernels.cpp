#include "divalg/kernels.hpp"

namespace divalg::kernels {

void product_scalar(const double* c, int n, const double* x, const double* y,
                    double* out) {
  for (int k = 0; k < n; ++k) out[k] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = x[i];
    const double* ci = c + static_cast<long>(i) * n * n;
    for (int j = 0; j < n; ++j) {
      const double p = xi * y[j];
      const double* cij = ci + static_cast<long>(j) * n;
      for (int k = 0; k < n; ++k) out[k] += p * cij[k];
    }
  }
}

ProductFn product_active() {
  static const ProductFn fn = [] {
    if (ProductFn avx2 = product_avx2()) return avx2;
    return &product_scalar;
  }();
  return fn;
}

const char* active_name() {
  return product_active() == &product_scalar ? "scalar" : "avx2";
}

}  // namespace divalg::kernels
