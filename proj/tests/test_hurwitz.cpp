#include <doctest.h>

#include "divalg/hurwitz.hpp"
#include "divalg/rng.hpp"
#include "divalg/structure.hpp"

#include "oracles.hpp"

using namespace divalg;

namespace {

Vec e(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("hurwitz tower basics") {
  CHECK_THROWS_AS(hurwitz(3), dimension_error);
  const Algebra o = hurwitz(8).algebra();
  // (ij)l basis bookkeeping.
  CHECK((o.multiply(e(8, 3), e(8, 4)) - e(8, 7)).norm() == 0.0);
  // Non-associativity witness (i j) l != i (j l).
  const Vec assoc = o.multiply(o.multiply(e(8, 1), e(8, 2)), e(8, 4)) -
                    o.multiply(e(8, 1), o.multiply(e(8, 2), e(8, 4)));
  CHECK(assoc.norm() > 1.0);
}

TEST_CASE("norm multiplicativity and the quadratic equation") {
  Rng rng(41);
  for (int dim : {1, 2, 4, 8}) {
    const HurwitzAlgebra h = hurwitz(dim);
    double worst_n = 0.0, worst_q = 0.0;
    for (int t = 0; t < 500; ++t) {
      const Vec x = rng.gaussian_vec(dim), y = rng.gaussian_vec(dim);
      const double lhs = h.norm_form(h.algebra().multiply(x, y));
      const double rhs = h.norm_form(x) * h.norm_form(y);
      worst_n = std::max(worst_n, std::abs(lhs - rhs) / std::max(1.0, rhs));
      const Vec q = h.algebra().multiply(x, x) - h.trace_form(x) * x +
                    h.norm_form(x) * h.unit();
      worst_q = std::max(worst_q,
                         q.cwiseAbs().maxCoeff() / std::max(1.0, h.norm_form(x)));
    }
    CHECK(worst_n < 1e-12);
    CHECK(worst_q < 1e-12);
  }
}

TEST_CASE("conjugation, trace, inverse") {
  const HurwitzAlgebra c = hurwitz(2);
  CHECK((c.conjugate(e(2, 0)) - e(2, 0)).norm() == 0.0);
  CHECK((c.conjugate(e(2, 1)) + e(2, 1)).norm() == 0.0);
  CHECK((c.conjugation() * c.conjugation() - Mat::Identity(2, 2)).norm() == 0.0);

  const HurwitzAlgebra h = hurwitz(4);
  Vec onePlusI = e(4, 0) + e(4, 1);
  const Vec inv = h.inverse(onePlusI);
  CHECK((inv - 0.5 * (e(4, 0) - e(4, 1))).norm() < 1e-14);

  const HurwitzAlgebra o = hurwitz(8);
  Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    const Vec x = rng.gaussian_vec(8);
    if (x.norm() < 1e-3) continue;
    CHECK((o.algebra().multiply(x, o.inverse(x)) - o.unit()).cwiseAbs().maxCoeff() <
          1e-12);
  }
  CHECK_THROWS_AS(o.inverse(Vec::Zero(8)), singular_error);
}

TEST_CASE("automorphisms from Cayley triples") {
  const HurwitzAlgebra o = hurwitz(8);
  const CayleyTriple ref{e(8, 1), e(8, 2), e(8, 4)};
  CHECK(cayley_triple_residual(o, ref) == 0.0);
  CHECK((automorphism_from_cayley_triple(o, ref) - Mat::Identity(8, 8)).norm() ==
        0.0);

  const Mat m44 =
      automorphism_from_cayley_triple(o, {e(8, 1), e(8, 2), -e(8, 4)});
  Vec diag(8);
  diag << 1, 1, 1, 1, -1, -1, -1, -1;
  CHECK((m44 - Mat(diag.asDiagonal())).norm() == 0.0);

  // Random triples generate orthogonal automorphisms.
  Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    // Construct a random Cayley triple by Gram-Schmidt in Im O.
    Vec u = rng.gaussian_vec(8), v = rng.gaussian_vec(8), z = rng.gaussian_vec(8);
    u[0] = v[0] = z[0] = 0.0;
    u.normalize();
    v -= v.dot(u) * u;
    v[0] = 0.0;
    v.normalize();
    const Vec uv = o.algebra().multiply(u, v);
    z -= z.dot(u) * u + z.dot(v) * v + z.dot(uv) * uv / uv.squaredNorm();
    z[0] = 0.0;
    z.normalize();
    const CayleyTriple t3{u, v, z};
    REQUIRE(cayley_triple_residual(o, t3) < 1e-12);
    const Mat phi = automorphism_from_cayley_triple(o, t3);
    CHECK((phi.transpose() * phi - Mat::Identity(8, 8)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(morphism_residual(o.algebra(), o.algebra(), phi) < 1e-9);
    // Round trip: the triple is recovered from the automorphism's columns.
    CHECK((phi.col(1) - u).norm() < 1e-12);
    CHECK((phi.col(2) - v).norm() < 1e-12);
    CHECK((phi.col(4) - z).norm() < 1e-12);
  }
  CHECK_THROWS_AS(
      automorphism_from_cayley_triple(o, {e(8, 1), e(8, 1), e(8, 4)}), error);
}

TEST_CASE("the ten involutive-inversion classes") {
  REQUIRE(invinv_labels().size() == 10);
  for (const std::string& label : invinv_labels()) {
    const InvInvAlgebra inv = invinv_algebra(label);
    const int n = inv.spec.dim;
    const Mat id = Mat::Identity(n, n);
    const Mat ts = inv.spec.tau * inv.spec.sigma;
    CHECK((inv.spec.sigma * inv.spec.sigma - id).norm() < 1e-12);
    CHECK((inv.spec.tau * inv.spec.tau - id).norm() < 1e-12);
    CHECK((ts * ts * ts - id).norm() < 1e-12);
    const Algebra base = hurwitz(n).algebra();
    CHECK(morphism_residual(base, base, inv.spec.sigma) < 1e-12);
    CHECK(morphism_residual(base, base, inv.spec.tau) < 1e-12);
    // sigma, tau orthogonal; T, S, N orthogonal decomposition with 1 in T.
    CHECK((inv.spec.sigma.transpose() * inv.spec.sigma - id).norm() < 1e-12);
    const D6Spaces sp = d6_spaces(inv.spec.sigma, inv.spec.tau);
    const Vec unit = e(n, 0);
    CHECK((sp.t_basis * (sp.t_basis.transpose() * unit) - unit).norm() < 1e-10);
    CHECK(sp.t_basis.cols() + sp.s_basis.cols() + sp.n_basis.cols() == n);
  }
  CHECK_THROWS_AS(invinv_algebra("O-999"), error);

  // Label (1) is the reals; (22) fixes 1,i and negates j,k.
  CHECK(invinv_algebra("R").algebra.dim() == 1);
  const InvInvAlgebra h22 = invinv_algebra("H-22");
  Vec diag(4);
  diag << 1, 1, -1, -1;
  CHECK((h22.spec.sigma - Mat(diag.asDiagonal())).norm() < 1e-14);
}

TEST_CASE("squareidp") {
  // (222): sigma-eigenvector x in N (the submodule case).
  const InvInvAlgebra o222 = invinv_algebra("O-222");
  const D6Spaces sp = d6_spaces(o222.spec.sigma, o222.spec.tau);
  REQUIRE(sp.n_basis.cols() == 4);
  Rng rng(53);
  // Intersect N with ker(sigma - I) by projecting the sigma-fixed part.
  const Mat proj_n = sp.n_basis * sp.n_basis.transpose();
  double worst = 0.0;
  int checked = 0;
  for (int t = 0; t < 200 && checked < 50; ++t) {
    Vec x = proj_n * rng.gaussian_vec(8);
    x = 0.5 * (x + o222.spec.sigma * x);  // sigma-fixed component
    x = proj_n * x;
    if (x.norm() < 1e-6) continue;
    ++checked;
    worst = std::max(worst, squareidp_check(o222.spec, x));
  }
  REQUIRE(checked > 0);
  CHECK(worst < 1e-9);

  // (113): 100 random x in N.
  const InvInvAlgebra o113 = invinv_algebra("O-113");
  const D6Spaces sp113 = d6_spaces(o113.spec.sigma, o113.spec.tau);
  const Mat projn = sp113.n_basis * sp113.n_basis.transpose();
  worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vec x = projn * rng.gaussian_vec(8);
    worst = std::max(worst, squareidp_check(o113.spec, x));
  }
  CHECK(worst < 1e-8);

  // x = 0 returns 0 by convention.
  CHECK(squareidp_check(o113.spec, Vec::Zero(8)) == 0.0);
}

TEST_CASE("vector product reconstruction") {
  for (int dim : {2, 4, 8}) {
    const HurwitzAlgebra h = hurwitz(dim);
    const Algebra rebuilt = vector_product_algebra(h);
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          worst = std::max(worst, std::abs(rebuilt.constant(i, j, k) -
                                           h.algebra().constant(i, j, k)));
    CHECK(worst < 1e-13);
  }
  // pi(v,v) = 0 and the norm identity |pi(u,v)|^2 = |u|^2 |v|^2 - <u,v>^2.
  const HurwitzAlgebra o = hurwitz(8);
  const Algebra& a = o.algebra();
  Rng rng(59);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Vec u = rng.gaussian_vec(8), v = rng.gaussian_vec(8);
    u[0] = v[0] = 0.0;
    const Vec pi = 0.5 * (a.multiply(u, v) - a.multiply(v, u));
    const double lhs = pi.squaredNorm();
    const double rhs = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
    const Vec pvv = 0.5 * (a.multiply(u, u) - a.multiply(u, u));
    CHECK(pvv.norm() == 0.0);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("polar decomposition") {
  Mat two = 2.0 * Mat::Identity(4, 4);
  const PolarDecomposition pd2 = polar_decompose(two);
  CHECK((pd2.gamma - Mat::Identity(4, 4)).norm() < 1e-13);
  CHECK((pd2.delta - two).norm() < 1e-13);

  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    Mat m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = rng.gaussian();
    if (std::abs(m.determinant()) < 1e-3) continue;
    const PolarDecomposition pd = polar_decompose(m);
    CHECK((pd.gamma * pd.delta - m).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((pd.gamma.transpose() * pd.gamma - Mat::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((pd.delta - pd.delta.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> eig(pd.delta);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    // Uniqueness vs the SVD-based oracle.
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Mat gamma_o = svd.matrixU() * svd.matrixV().transpose();
    const Mat delta_o = svd.matrixV() * svd.singularValues().asDiagonal() *
                        svd.matrixV().transpose();
    CHECK((pd.gamma - gamma_o).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((pd.delta - delta_o).cwiseAbs().maxCoeff() < 1e-10);
  }
  // Orthogonal input: (M, I).
  Mat q = Mat::Identity(4, 4);
  q(0, 0) = 0;
  q(0, 1) = -1;
  q(1, 0) = 1;
  q(1, 1) = 0;
  const PolarDecomposition pdq = polar_decompose(q);
  CHECK((pdq.gamma - q).norm() < 1e-13);
  CHECK((pdq.delta - Mat::Identity(4, 4)).norm() < 1e-13);
  CHECK_THROWS_AS(polar_decompose(Mat::Zero(4, 4)), singular_error);
}
