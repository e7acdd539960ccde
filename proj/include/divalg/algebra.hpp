#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divalg/types.hpp"

namespace divalg {

// Finite-dimensional real algebra given by its structure-constant tensor:
// e_i e_j = sum_k constant(i,j,k) e_k. Immutable after construction.
class Algebra {
 public:
  Algebra(int dim, std::vector<double> constants,
          std::vector<std::string> labels = {}, double tol = kDefaultTol);

  int dim() const { return dim_; }
  double tol() const { return tol_; }
  const std::vector<double>& constants() const { return c_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double constant(int i, int j, int k) const {
    return c_[static_cast<std::size_t>((i * dim_ + j)) * dim_ + k];
  }

  Vec multiply(const Vec& x, const Vec& y) const;
  Mat left_mul(const Vec& a) const;
  Mat right_mul(const Vec& a) const;

  // a \ y = L_a^{-1} y  and  x / b = R_b^{-1} x. Column-pivoted QR solves;
  // throws singular_error when sigma_min(L_a) < tol * sigma_max(L_a).
  Vec left_divide(const Vec& a, const Vec& y) const;
  Vec right_divide(const Vec& x, const Vec& b) const;

  // Isotope A_{alpha,beta}: x o y = alpha(x) beta(y).
  Algebra isotope(const Mat& alpha, const Mat& beta) const;
  Algebra opposite() const;

  // Constants rewritten in the basis q e_0, ..., q e_{n-1} (q orthogonal).
  Algebra change_basis(const Mat& q) const;

  // Sampled division property: L_a, R_a invertible at tol for random nonzero a.
  bool division_sampled(int trials, std::uint64_t seed) const;

 private:
  void check_dim(const Vec& v, const char* who) const;

  int dim_;
  double tol_;
  std::vector<double> c_;
  std::vector<std::string> labels_;
};

// Newton's method on F(x) = x*x - x with Jacobian L_x + R_x - I, seeded
// unit-sphere starts, 100 iterations per start. Deterministic given seed.
// Throws convergence_error (carrying the best residual) after max_restarts.
Vec find_idempotent(const Algebra& a, std::uint64_t seed,
                    int max_restarts = 50);

// (A,*) with x*y = (x/e)(e\y); e must be idempotent within tol. The result
// has e as its two-sided unit.
Algebra star_product(const Algebra& a, const Vec& e);

// Frobenius-norm residual of Hua's operator identity
//   L_a L_b L_a = L_a + ((L_a - L_b^{-1})^{-1} - L_a^{-1})^{-1}.
// The excluded branch L_b = L_a^{-1} (detected via |L_a L_b - I| < tol)
// returns 0 by convention.
double hua_check(const Algebra& a, const Vec& x, const Vec& y);

}  // namespace divalg
