#include "divalg/algebra.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <utility>

#include "divalg/kernels.hpp"
#include "divalg/rng.hpp"

namespace divalg {

namespace {

// sigma_min / sigma_max of a square matrix.
std::pair<double, double> extreme_singular_values(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return {s[s.size() - 1], s[0]};
}

Vec solve_checked(const Mat& op, const Vec& rhs, double tol, const char* who) {
  auto [smin, smax] = extreme_singular_values(op);
  if (!(smin > tol * smax)) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s: operator singular at tolerance (%.3e < %.3e)",
                  who, smin, tol * smax);
    throw singular_error(buf);
  }
  return op.colPivHouseholderQr().solve(rhs);
}

}  // namespace

Algebra::Algebra(int dim, std::vector<double> constants,
                 std::vector<std::string> labels, double tol)
    : dim_(dim), tol_(tol), c_(std::move(constants)), labels_(std::move(labels)) {
  if (dim_ <= 0) throw dimension_error("algebra dimension must be positive");
  if (c_.size() != static_cast<std::size_t>(dim_) * dim_ * dim_)
    throw dimension_error("constants tensor must have dim^3 entries");
  for (double v : c_)
    if (!std::isfinite(v)) throw error("constants must be finite");
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(dim_))
    throw dimension_error("labels must match dim");
  if (tol_ < 0) throw error("tol must be nonnegative");
}

void Algebra::check_dim(const Vec& v, const char* who) const {
  if (v.size() != dim_) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s: element has length %ld, expected %d",
                  who, static_cast<long>(v.size()), dim_);
    throw dimension_error(buf);
  }
}

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
  check_dim(x, "multiply");
  check_dim(y, "multiply");
  Vec out(dim_);
  kernels::product_active()(c_.data(), dim_, x.data(), y.data(), out.data());
  return out;
}

Mat Algebra::left_mul(const Vec& a) const {
  check_dim(a, "left_mul");
  Mat m = Mat::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int i = 0; i < dim_; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      for (int k = 0; k < dim_; ++k) m(k, j) += ai * constant(i, j, k);
    }
  return m;
}

Mat Algebra::right_mul(const Vec& a) const {
  check_dim(a, "right_mul");
  Mat m = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const double aj = a[j];
      if (aj == 0.0) continue;
      for (int k = 0; k < dim_; ++k) m(k, i) += aj * constant(i, j, k);
    }
  return m;
}

Vec Algebra::left_divide(const Vec& a, const Vec& y) const {
  check_dim(a, "left_divide");
  check_dim(y, "left_divide");
  if (a.norm() <= tol_) throw singular_error("left_divide: zero divisor");
  return solve_checked(left_mul(a), y, tol_, "left_divide");
}

Vec Algebra::right_divide(const Vec& x, const Vec& b) const {
  check_dim(x, "right_divide");
  check_dim(b, "right_divide");
  if (b.norm() <= tol_) throw singular_error("right_divide: zero divisor");
  return solve_checked(right_mul(b), x, tol_, "right_divide");
}

Algebra Algebra::isotope(const Mat& alpha, const Mat& beta) const {
  if (alpha.rows() != dim_ || alpha.cols() != dim_ || beta.rows() != dim_ ||
      beta.cols() != dim_)
    throw dimension_error("isotope: map dimensions must match the algebra");
  for (const Mat* m : {&alpha, &beta}) {
    auto [smin, smax] = extreme_singular_values(*m);
    if (!(smin > tol_ * smax))
      throw singular_error("isotope: alpha and beta must be invertible");
  }
  std::vector<double> cc(c_.size());
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const Vec p = multiply(alpha.col(i), beta.col(j));
      for (int k = 0; k < dim_; ++k)
        cc[static_cast<std::size_t>((i * dim_ + j)) * dim_ + k] = p[k];
    }
  return Algebra(dim_, std::move(cc), {}, tol_);
}

Algebra Algebra::opposite() const {
  std::vector<double> cc(c_.size());
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        cc[static_cast<std::size_t>((i * dim_ + j)) * dim_ + k] =
            constant(j, i, k);
  return Algebra(dim_, std::move(cc), labels_, tol_);
}

Algebra Algebra::change_basis(const Mat& q) const {
  if (q.rows() != dim_ || q.cols() != dim_)
    throw dimension_error("change_basis: matrix must be dim x dim");
  const Mat qt = q.transpose();
  std::vector<double> cc(c_.size());
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const Vec p = qt * multiply(q.col(i), q.col(j));
      for (int k = 0; k < dim_; ++k)
        cc[static_cast<std::size_t>((i * dim_ + j)) * dim_ + k] = p[k];
    }
  return Algebra(dim_, std::move(cc), {}, tol_);
}

bool Algebra::division_sampled(int trials, std::uint64_t seed) const {
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Vec a = rng.unit_vec(dim_);
    auto [lmin, lmax] = extreme_singular_values(left_mul(a));
    if (!(lmin > tol_ * lmax)) return false;
    auto [rmin, rmax] = extreme_singular_values(right_mul(a));
    if (!(rmin > tol_ * rmax)) return false;
  }
  return true;
}

Vec find_idempotent(const Algebra& a, std::uint64_t seed, int max_restarts) {
  const int n = a.dim();
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < max_restarts; ++restart) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(restart));
    Vec x = rng.unit_vec(n);
    for (int it = 0; it < 100; ++it) {
      const Vec f = a.multiply(x, x) - x;
      const double r = f.cwiseAbs().maxCoeff();
      if (r < 1e-14) break;
      const Mat jac = a.left_mul(x) + a.right_mul(x) - Mat::Identity(n, n);
      // Least-squares step: the Jacobian can be singular at unlucky points.
      x += jac.colPivHouseholderQr().solve(-f);
      if (!x.allFinite()) break;
    }
    if (!x.allFinite()) continue;
    const double r = (a.multiply(x, x) - x).cwiseAbs().maxCoeff();
    best = std::min(best, r);
    if (r < a.tol() && x.norm() > a.tol()) return x;
  }
  throw convergence_error("find_idempotent: no idempotent found", best);
}

Algebra star_product(const Algebra& a, const Vec& e) {
  const int n = a.dim();
  const Vec ee = a.multiply(e, e);
  if ((ee - e).cwiseAbs().maxCoeff() > a.tol() * std::max(1.0, e.norm()))
    throw error("star_product: e is not idempotent at tolerance");
  std::vector<double> cc(static_cast<std::size_t>(n) * n * n);
  std::vector<Vec> rdiv(n), ldiv(n);
  for (int i = 0; i < n; ++i) {
    Vec basis = Vec::Zero(n);
    basis[i] = 1.0;
    rdiv[i] = a.right_divide(basis, e);  // e_i / e
    ldiv[i] = a.left_divide(e, basis);   // e \ e_i
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec p = a.multiply(rdiv[i], ldiv[j]);
      for (int k = 0; k < n; ++k)
        cc[static_cast<std::size_t>((i * n + j)) * n + k] = p[k];
    }
  Algebra out(n, std::move(cc), {}, a.tol());
  // e*e = e is the two-sided unit of the result.
  for (int j = 0; j < n; ++j) {
    Vec basis = Vec::Zero(n);
    basis[j] = 1.0;
    if ((out.multiply(e, basis) - basis).cwiseAbs().maxCoeff() > a.tol() ||
        (out.multiply(basis, e) - basis).cwiseAbs().maxCoeff() > a.tol())
      throw error("star_product: e*e failed to act as the unit");
  }
  return out;
}

double hua_check(const Algebra& a, const Vec& x, const Vec& y) {
  const int n = a.dim();
  if (x.norm() <= a.tol() || y.norm() <= a.tol())
    throw singular_error("hua_check: operands must be nonzero");
  const Mat la = a.left_mul(x);
  const Mat lb = a.left_mul(y);
  auto invert = [&](const Mat& m, const char* who) -> Mat {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (!(s[n - 1] > a.tol() * s[0])) throw singular_error(who);
    return svd.solve(Mat::Identity(n, n));
  };
  const Mat la_inv = invert(la, "hua_check: L_a singular");
  const Mat lb_inv = invert(lb, "hua_check: L_b singular");
  // Excluded branch L_b = L_a^{-1}: in L_A trivially, residual 0 by convention.
  if ((la * lb - Mat::Identity(n, n)).norm() < a.tol()) return 0.0;
  const Mat inner = invert(la - lb_inv, "hua_check: L_a - L_b^{-1} singular") - la_inv;
  const Mat rhs = la + invert(inner, "hua_check: inner operator singular");
  const Mat lhs = la * lb * la;
  return (lhs - rhs).norm() / std::max(1.0, lhs.norm());
}

}  // namespace divalg
