#include "divalg/hurwitz.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "divalg/structure.hpp"

namespace divalg {

namespace {

// Cayley-Dickson doubling with parameter -1 at every stage:
// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
std::vector<double> cayley_dickson_constants(int dim) {
  std::vector<double> c{1.0};
  int m = 1;
  while (m < dim) {
    const int n = 2 * m;
    std::vector<double> cc(static_cast<std::size_t>(n) * n * n, 0.0);
    auto at = [&](int i, int j, int k) -> double& {
      return cc[static_cast<std::size_t>((i * n + j)) * n + k];
    };
    auto base = [&](int i, int j, int k) {
      return c[static_cast<std::size_t>((i * m + j)) * m + k];
    };
    auto conj_sign = [](int t) { return t == 0 ? 1.0 : -1.0; };
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          at(i, j, k) = base(i, j, k);                             // ac
          at(i, m + j, m + k) = base(j, i, k);                     // d a
          at(m + i, j, m + k) = conj_sign(j) * base(i, j, k);      // b conj(c)
          at(m + i, m + j, k) = -conj_sign(j) * base(j, i, k);     // -conj(d) b
        }
    c = std::move(cc);
    m = n;
  }
  return c;
}

std::vector<std::string> hurwitz_labels(int dim) {
  static const std::vector<std::string> oct = {"1",  "i",  "j",  "ij",
                                               "l",  "il", "jl", "(ij)l"};
  return {oct.begin(), oct.begin() + dim};
}

Vec basis_vec(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

constexpr double kCos23 = -0.5;  // cos(2*pi/3)
const double kSin23 = std::sqrt(3.0) / 2.0;

}  // namespace

HurwitzAlgebra::HurwitzAlgebra(int dim)
    : alg_(dim, cayley_dickson_constants(dim), hurwitz_labels(dim)) {
  if (dim != 1 && dim != 2 && dim != 4 && dim != 8)
    throw dimension_error("Hurwitz algebras exist in dimensions 1, 2, 4, 8");
}

HurwitzAlgebra hurwitz(int dim) { return HurwitzAlgebra(dim); }

Vec HurwitzAlgebra::unit() const { return basis_vec(dim(), 0); }

Mat HurwitzAlgebra::conjugation() const {
  Mat k = -Mat::Identity(dim(), dim());
  k(0, 0) = 1.0;
  return k;
}

Vec HurwitzAlgebra::conjugate(const Vec& x) const {
  Vec y = -x;
  y[0] = x[0];
  return y;
}

Vec HurwitzAlgebra::inverse(const Vec& x) const {
  const double n = norm_form(x);
  if (n <= alg_.tol()) throw singular_error("inverse: norm-zero element");
  return conjugate(x) / n;
}

double cayley_triple_residual(const HurwitzAlgebra& o, const CayleyTriple& t) {
  if (o.dim() != 8)
    throw dimension_error("Cayley triples live in the octonions");
  double r = 0.0;
  const Vec uv = o.algebra().multiply(t.u, t.v);
  for (const Vec* v : {&t.u, &t.v, &t.z}) {
    r = std::max(r, std::abs((*v)[0]));               // imaginary
    r = std::max(r, std::abs(v->squaredNorm() - 1.0));  // unit norm
  }
  r = std::max(r, std::abs(t.u.dot(t.v)));
  r = std::max(r, std::abs(t.u.dot(t.z)));
  r = std::max(r, std::abs(t.v.dot(t.z)));
  r = std::max(r, std::abs(uv.dot(t.u)));
  r = std::max(r, std::abs(uv.dot(t.v)));
  r = std::max(r, std::abs(uv.dot(t.z)));
  return r;
}

Mat automorphism_from_cayley_triple(const HurwitzAlgebra& o,
                                    const CayleyTriple& t) {
  const double res = cayley_triple_residual(o, t);
  if (res > o.algebra().tol())
    throw error("automorphism_from_cayley_triple: triple invariants violated");
  const Algebra& a = o.algebra();
  const Vec uv = a.multiply(t.u, t.v);
  Mat phi(8, 8);
  phi.col(0) = o.unit();
  phi.col(1) = t.u;
  phi.col(2) = t.v;
  phi.col(3) = uv;
  phi.col(4) = t.z;
  phi.col(5) = a.multiply(t.u, t.z);
  phi.col(6) = a.multiply(t.v, t.z);
  phi.col(7) = a.multiply(uv, t.z);
  return phi;
}

Mat automorphism_from_imaginary_pair(const HurwitzAlgebra& h, const Vec& u,
                                     const Vec& v) {
  if (h.dim() != 4) throw dimension_error("imaginary pairs live in H");
  double r = std::max(std::abs(u[0]), std::abs(v[0]));
  r = std::max({r, std::abs(u.squaredNorm() - 1.0),
                std::abs(v.squaredNorm() - 1.0), std::abs(u.dot(v))});
  if (r > h.algebra().tol())
    throw error("automorphism_from_imaginary_pair: pair invariants violated");
  Mat phi(4, 4);
  phi.col(0) = h.unit();
  phi.col(1) = u;
  phi.col(2) = v;
  phi.col(3) = h.algebra().multiply(u, v);
  return phi;
}

const std::vector<std::string>& invinv_labels() {
  static const std::vector<std::string> labels = {
      "R",    "C-id", "C-conj", "H-id", "H-22",
      "H-111", "O-id", "O-44",  "O-222", "O-113"};
  return labels;
}

InvInvAlgebra invinv_algebra(const std::string& label) {
  Mat sigma, tau;
  int dim = 0;
  if (label == "R") {
    dim = 1;
    sigma = tau = Mat::Identity(1, 1);
  } else if (label == "C-id") {
    dim = 2;
    sigma = tau = Mat::Identity(2, 2);
  } else if (label == "C-conj") {
    dim = 2;
    sigma = tau = hurwitz(2).conjugation();
  } else if (label == "H-id") {
    dim = 4;
    sigma = tau = Mat::Identity(4, 4);
  } else if (label == "H-22" || label == "H-111") {
    dim = 4;
    const HurwitzAlgebra h = hurwitz(4);
    const Vec i = basis_vec(4, 1), j = basis_vec(4, 2);
    sigma = automorphism_from_imaginary_pair(h, i, -j);
    if (label == "H-22") {
      tau = sigma;
    } else {
      tau = automorphism_from_imaginary_pair(h, kCos23 * i + kSin23 * j,
                                             kSin23 * i - kCos23 * j);
    }
  } else {
    const HurwitzAlgebra o = hurwitz(8);
    dim = 8;
    const Vec i = basis_vec(8, 1), j = basis_vec(8, 2), l = basis_vec(8, 4);
    const Vec il = basis_vec(8, 5), jl = basis_vec(8, 6);
    if (label == "O-id") {
      sigma = tau = Mat::Identity(8, 8);
    } else if (label == "O-44") {
      sigma = automorphism_from_cayley_triple(o, {i, j, -l});
      tau = sigma;
    } else if (label == "O-222") {
      sigma = automorphism_from_cayley_triple(o, {-i, -j, l});
      tau = automorphism_from_cayley_triple(o, {-i, -j, kCos23 * l + kSin23 * il});
    } else if (label == "O-113") {
      sigma = automorphism_from_cayley_triple(o, {i, j, -l});
      tau = automorphism_from_cayley_triple(
          o, {kCos23 * i + kSin23 * il, kCos23 * j + kSin23 * jl, -l});
    } else {
      throw error("unknown involutive-inversion label: " + label);
    }
  }
  const HurwitzAlgebra base = hurwitz(dim);
  InvInvSpec spec{label, dim, sigma, tau};
  return {base.algebra().isotope(sigma, tau), std::move(spec)};
}

double squareidp_check(const InvInvSpec& spec, const Vec& x) {
  const HurwitzAlgebra base = hurwitz(spec.dim);
  const Algebra& a = base.algebra();
  const D6Spaces spaces = d6_spaces(spec.sigma, spec.tau);
  if (spaces.s_basis.cols() == 0)
    throw error("squareidp_check: S subspace is trivial");
  const double nx2 = x.squaredNorm();
  if (nx2 <= a.tol()) return 0.0;
  // x must lie in N at tolerance.
  const Vec in_n = spaces.n_basis * (spaces.n_basis.transpose() * x);
  if ((x - in_n).norm() > a.tol() * std::max(1.0, x.norm()))
    throw error("squareidp_check: x is not in the N subspace");
  const Vec q = a.multiply(spec.sigma * x, spec.tau * x);
  // Minimize |q + nx2 (c - s y)| over unit y in S: least squares then
  // renormalize.
  const Vec target = (q + kCos23 * nx2 * base.unit()) / (kSin23 * nx2);
  Vec y = spaces.s_basis * (spaces.s_basis.transpose() * target);
  const double ny = y.norm();
  y = ny > 1e-12 ? Vec(y / ny) : Vec(spaces.s_basis.col(0));
  const Vec w = kCos23 * base.unit() - kSin23 * y;
  double r = (q + nx2 * w).cwiseAbs().maxCoeff() / std::max(1.0, nx2);
  // (c - s y) is idempotent for the isotope product.
  const Vec ww = a.multiply(spec.sigma * w, spec.tau * w);
  r = std::max(r, (ww - w).cwiseAbs().maxCoeff());
  return r;
}

Algebra vector_product_algebra(const HurwitzAlgebra& h) {
  const int n = h.dim();
  const Algebra& a = h.algebra();
  const int m = n - 1;
  // pi(v, w) = [v, w]/2 on Im H; scalar slot carries lambda*mu - <v,w>.
  std::vector<double> cc(static_cast<std::size_t>(n) * n * n, 0.0);
  auto at = [&](int i, int j, int k) -> double& {
    return cc[static_cast<std::size_t>((i * n + j)) * n + k];
  };
  at(0, 0, 0) = 1.0;
  for (int p = 0; p < m; ++p) {
    at(0, 1 + p, 1 + p) = 1.0;  // lambda w
    at(1 + p, 0, 1 + p) = 1.0;  // mu v
    at(1 + p, 1 + p, 0) = -1.0; // -<v,v>
  }
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      if (p == q) continue;
      const Vec vp = basis_vec(n, 1 + p), vq = basis_vec(n, 1 + q);
      const Vec comm =
          0.5 * (a.multiply(vp, vq) - a.multiply(vq, vp));
      for (int k = 0; k < m; ++k) at(1 + p, 1 + q, 1 + k) += comm[1 + k];
    }
  return Algebra(n, std::move(cc), a.labels(), a.tol());
}

PolarDecomposition polar_decompose(const Mat& m, double tol) {
  if (m.rows() != m.cols()) throw dimension_error("polar_decompose: square only");
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s[s.size() - 1] > tol * s[0]))
    throw singular_error("polar_decompose: singular input");
  const Mat gamma = svd.matrixU() * svd.matrixV().transpose();
  const Mat delta =
      svd.matrixV() * s.asDiagonal() * svd.matrixV().transpose();
  return {gamma, delta};
}

}  // namespace divalg
