#include "divalg/structure.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "divalg/hurwitz.hpp"
#include "divalg/rng.hpp"

namespace divalg {

namespace {

struct NullspaceResult {
  Mat basis;  // orthonormal columns spanning the nullspace
  int rank = 0;
  double gap = std::numeric_limits<double>::infinity();
};

// Rank cutoff kRankCutoff * max(sigma_max, 1); the floor keeps numerically
// zero condition matrices (exactly satisfied systems) at full nullity.
NullspaceResult svd_nullspace(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = kRankCutoff * std::max(s.size() > 0 ? s[0] : 0.0, 1.0);
  int rank = 0;
  while (rank < s.size() && s[rank] > cut) ++rank;
  NullspaceResult out;
  out.rank = rank;
  out.basis = svd.matrixV().rightCols(m.cols() - rank);
  if (rank > 0 && rank < s.size() && s[rank] > 0.0)
    out.gap = s[rank - 1] / s[rank];
  return out;
}

int rank_of(const Mat& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  const double cut = kRankCutoff * std::max(s[0], 1.0);
  int rank = 0;
  while (rank < s.size() && s[rank] > cut) ++rank;
  return rank;
}

Vec basis_vec(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

// vec of an n x n matrix, column-major.
void scatter_map_columns(Mat& out, int col, const Mat& m) {
  out.col(col) = Eigen::Map<const Vec>(m.data(), m.size());
}

}  // namespace

TderBasis tder(const Algebra& a) {
  const int n = a.dim();
  const int nn = n * n;
  // Unknowns: vec(d1), vec(d2), vec(d3); rows: the k-component of
  // d1(e_i e_j) - d2(e_i) e_j - e_i d3(e_j).
  Mat cond = Mat::Zero(n * nn, 3 * nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec p = a.multiply(basis_vec(n, i), basis_vec(n, j));
      for (int k = 0; k < n; ++k) {
        const int row = (i * n + j) * n + k;
        for (int m = 0; m < n; ++m) {
          cond(row, k + m * n) = p[m];                        // d1[k,m] p_m
          cond(row, nn + m + i * n) -= a.constant(m, j, k);   // d2[m,i]
          cond(row, 2 * nn + m + j * n) -= a.constant(i, m, k);  // d3[m,j]
        }
      }
    }
  const NullspaceResult ns = svd_nullspace(cond);
  TderBasis out;
  out.dim = static_cast<int>(ns.basis.cols());
  out.spectral_gap = ns.gap;
  out.triples.reserve(out.dim);
  for (int c = 0; c < out.dim; ++c) {
    std::array<Mat, 3> triple;
    for (int part = 0; part < 3; ++part)
      triple[part] = Eigen::Map<const Mat>(ns.basis.col(c).data() + part * nn, n, n);
    out.triples.push_back(std::move(triple));
  }
  for (int part = 0; part < 3; ++part) {
    Mat block(nn, out.dim);
    for (int c = 0; c < out.dim; ++c)
      scatter_map_columns(block, c, out.triples[c][part]);
    out.projection_dims[part] = rank_of(block);
    out.kernel_dims[part] = out.dim - out.projection_dims[part];
  }
  return out;
}

NucleiReport nuclei(const Algebra& a) {
  const int n = a.dim();
  NucleiReport out;
  for (int which = 0; which < 3; ++which) {
    Mat cond = Mat::Zero(n * n * n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vec ei = basis_vec(n, i), ej = basis_vec(n, j);
        for (int t = 0; t < n; ++t) {
          const Vec et = basis_vec(n, t);
          Vec assoc;
          switch (which) {
            case 0:  // (a e_i) e_j - a (e_i e_j)
              assoc = a.multiply(a.multiply(et, ei), ej) -
                      a.multiply(et, a.multiply(ei, ej));
              break;
            case 1:  // (e_i a) e_j - e_i (a e_j)
              assoc = a.multiply(a.multiply(ei, et), ej) -
                      a.multiply(ei, a.multiply(et, ej));
              break;
            default:  // (e_i e_j) a - e_i (e_j a)
              assoc = a.multiply(a.multiply(ei, ej), et) -
                      a.multiply(ei, a.multiply(ej, et));
          }
          cond.block((i * n + j) * n, t, n, 1) = assoc;
        }
      }
    const NullspaceResult ns = svd_nullspace(cond);
    out.dims[which] = static_cast<int>(ns.basis.cols());
    out.gaps[which] = ns.gap;
    switch (which) {
      case 0: out.left_basis = ns.basis; break;
      case 1: out.middle_basis = ns.basis; break;
      default: out.right_basis = ns.basis;
    }
  }
  return out;
}

InversionReport left_inversion(const Algebra& a, int samples,
                               std::uint64_t seed) {
  const int n = a.dim();
  // b -> L_b is linear; columns are vec(L_{e_t}).
  Mat lbasis(n * n, n);
  for (int t = 0; t < n; ++t)
    scatter_map_columns(lbasis, t, a.left_mul(basis_vec(n, t)));
  const auto lbasis_qr = lbasis.colPivHouseholderQr();

  auto inversion_element = [&](const Vec& x) -> std::pair<Vec, double> {
    const Mat lx = a.left_mul(x);
    Eigen::JacobiSVD<Mat> svd(lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (!(s[n - 1] > 1e-6 * s[0])) return {Vec(), -1.0};  // reject draw
    const Mat inv = svd.solve(Mat::Identity(n, n));
    const Vec target = Eigen::Map<const Vec>(inv.data(), inv.size());
    const Vec b = lbasis_qr.solve(target);
    const double res =
        (lbasis * b - target).cwiseAbs().maxCoeff() / std::max(1.0, inv.norm());
    return {b, res};
  };

  InversionReport out;
  Rng rng(seed);
  int accepted = 0;
  int attempts = 0;
  while (accepted < samples) {
    if (++attempts > 20 * samples + 100)
      throw error("left_inversion: all draws rejected");
    const Vec x = rng.unit_vec(n);
    auto [b, res] = inversion_element(x);
    if (res < 0) continue;
    ++accepted;
    out.max_witness_residual = std::max(out.max_witness_residual, res);
    out.samples.emplace_back(x, b);
  }
  out.has_left_inversion = out.max_witness_residual < a.tol();
  if (out.has_left_inversion) {
    // s(ab) = s(b) s(a) on sampled pairs.
    double worst = 0.0;
    const int pair_count = std::max(4, samples / 2);
    for (int t = 0; t < pair_count; ++t) {
      const Vec x = rng.unit_vec(n), y = rng.unit_vec(n);
      auto [sx, rx] = inversion_element(x);
      auto [sy, ry] = inversion_element(y);
      auto [sxy, rxy] = inversion_element(a.multiply(x, y));
      if (rx < 0 || ry < 0 || rxy < 0) continue;
      const Vec rhs = a.multiply(sy, sx);
      worst = std::max(worst, (sxy - rhs).cwiseAbs().maxCoeff() /
                                  std::max(1.0, rhs.norm()));
    }
    out.involutive_residual = worst;
    out.involutive = worst < a.tol();
  }
  return out;
}

CriterionReport criterion_check(const Mat& alpha, const Mat& beta,
                                std::uint64_t seed) {
  if (alpha.rows() != 4 || alpha.cols() != 4 || beta.rows() != 4 ||
      beta.cols() != 4)
    throw dimension_error("criterion_check: quaternion case only (4x4)");
  const HurwitzAlgebra h = hurwitz(4);
  const Algebra& q = h.algebra();

  CriterionReport out;
  const double det = beta.determinant();
  if (std::abs(det) < 1e-12)
    throw singular_error("criterion_check: beta singular");

  if (det > 0) {
    const PolarDecomposition pd = polar_decompose(beta);
    const double rho = pd.delta.trace() / 4.0;
    out.delta_residual =
        (pd.delta - rho * Mat::Identity(4, 4)).norm() / std::max(1.0, rho);
    if (out.delta_residual < kDefaultTol) {
      // gamma in SO(4): recover the L_p R_q factorization through the
      // Frobenius pairing with the 16 basis maps L_{e_k} R_{e_l}.
      Mat pairing(4, 4);
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const Mat b =
              q.left_mul(basis_vec(4, k)) * q.right_mul(basis_vec(4, l));
          pairing(k, l) = (pd.gamma.array() * b.array()).sum() / 4.0;
        }
      Eigen::JacobiSVD<Mat> svd(pairing,
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
      Vec u = svd.matrixV().col(0) * std::sqrt(svd.singularValues()[0]);
      // Sign convention: first nonzero coordinate positive.
      for (int t = 0; t < 4; ++t) {
        if (std::abs(u[t]) > 1e-12) {
          if (u[t] < 0) u = -u;
          break;
        }
      }
      const Vec u2 = q.multiply(u, u);
      out.u_square_residual = u2.tail(3).norm() / std::max(1.0, u2.norm());
      out.factors = out.u_square_residual < kDefaultTol;
    }
  }
  // Cross-check against the direct oracle on a random isotope H_{alpha,beta}.
  const InversionReport direct =
      left_inversion(q.isotope(alpha, beta), 16, seed);
  out.agrees_with_direct = (direct.has_left_inversion == out.factors);
  return out;
}

double morphism_residual(const Algebra& a, const Algebra& b, const Mat& phi) {
  if (phi.rows() != b.dim() || phi.cols() != a.dim())
    throw dimension_error("morphism_residual: phi must map A into B");
  const int n = a.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec lhs = phi * a.multiply(basis_vec(n, i), basis_vec(n, j));
      const Vec rhs = b.multiply(phi.col(i), phi.col(j));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

namespace {

void require_d6_relations(const Mat& sigma, const Mat& tau, double tol) {
  const int n = static_cast<int>(sigma.rows());
  const Mat id = Mat::Identity(n, n);
  const Mat ts = tau * sigma;
  const double r =
      std::max({(sigma * sigma - id).norm(), (tau * tau - id).norm(),
                (ts * ts * ts - id).norm()});
  if (r > tol * n)
    throw error("d6: sigma^2 = tau^2 = (tau sigma)^3 = I violated");
}

}  // namespace

D6Spaces d6_spaces(const Mat& sigma, const Mat& tau, double tol) {
  require_d6_relations(sigma, tau, tol);
  const int n = static_cast<int>(sigma.rows());
  const Mat id = Mat::Identity(n, n);
  auto joint_null = [&](double sign) {
    Mat stacked(2 * n, n);
    stacked.topRows(n) = sigma - sign * id;
    stacked.bottomRows(n) = tau - sign * id;
    return svd_nullspace(stacked).basis;
  };
  D6Spaces out;
  out.t_basis = joint_null(+1.0);
  out.s_basis = joint_null(-1.0);
  // N = orthogonal complement of T + S.
  Mat ts(n, out.t_basis.cols() + out.s_basis.cols());
  ts << out.t_basis, out.s_basis;
  if (ts.cols() == 0) {
    out.n_basis = Mat::Identity(n, n);
  } else {
    const Mat proj = Mat::Identity(n, n) - ts * ts.transpose();
    Eigen::JacobiSVD<Mat> svd(proj, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    int rank = 0;
    while (rank < s.size() && s[rank] > 0.5) ++rank;  // projector spectrum
    out.n_basis = svd.matrixU().leftCols(rank);
  }
  return out;
}

D6Dims d6_dims(const Mat& sigma, const Mat& tau, double tol) {
  const D6Spaces spaces = d6_spaces(sigma, tau, tol);
  D6Dims out;
  out.t = static_cast<int>(spaces.t_basis.cols());
  out.s = static_cast<int>(spaces.s_basis.cols());
  out.n = static_cast<int>(sigma.rows()) - out.t - out.s;
  return out;
}

namespace {

// Least-squares solve for e with L_e = I (or R_e = I); returns (found, e).
std::pair<bool, Vec> solve_unit(const Algebra& a, bool left) {
  const int n = a.dim();
  Mat m(n * n, n);
  for (int t = 0; t < n; ++t) {
    const Mat op = left ? a.left_mul(basis_vec(n, t)) : a.right_mul(basis_vec(n, t));
    scatter_map_columns(m, t, op);
  }
  const Mat id = Mat::Identity(n, n);
  const Vec rhs = Eigen::Map<const Vec>(id.data(), id.size());
  const Vec e = m.colPivHouseholderQr().solve(rhs);
  const double res = (m * e - rhs).cwiseAbs().maxCoeff();
  return {res < a.tol(), e};
}

Tri central_idempotent(const Algebra& a, std::uint64_t seed) {
  const int n = a.dim();
  // Central subspace Z = {e : L_e = R_e} is linear in e.
  Mat cond(n * n, n);
  for (int t = 0; t < n; ++t)
    scatter_map_columns(cond, t,
                        Mat(a.left_mul(basis_vec(n, t)) -
                            a.right_mul(basis_vec(n, t))));
  const Mat z = svd_nullspace(cond).basis;
  if (z.cols() == 0) return Tri::no;
  // Gauss-Newton for an idempotent inside Z.
  for (int restart = 0; restart < 50; ++restart) {
    Rng rng = Rng::stream(seed, 1000 + static_cast<std::uint64_t>(restart));
    Vec y = rng.gaussian_vec(static_cast<int>(z.cols()));
    for (int it = 0; it < 100; ++it) {
      const Vec x = z * y;
      const Vec f = a.multiply(x, x) - x;
      if (f.cwiseAbs().maxCoeff() < 1e-14) break;
      const Mat jac =
          (a.left_mul(x) + a.right_mul(x) - Mat::Identity(n, n)) * z;
      y += jac.colPivHouseholderQr().solve(-f);
      if (!y.allFinite()) break;
    }
    if (!y.allFinite()) continue;
    const Vec x = z * y;
    if ((a.multiply(x, x) - x).cwiseAbs().maxCoeff() < a.tol() &&
        x.norm() > a.tol())
      return Tri::yes;
  }
  return Tri::undetermined;
}

}  // namespace

bool Fingerprint::core_equals(const Fingerprint& o) const {
  return dim == o.dim && has_left_unit == o.has_left_unit &&
         has_right_unit == o.has_right_unit && has_unit == o.has_unit &&
         has_central_idempotent == o.has_central_idempotent &&
         nuclei_dims == o.nuclei_dims && tder_dim == o.tder_dim;
}

bool Fingerprint::operator==(const Fingerprint& o) const {
  if (!core_equals(o)) return false;
  if (d6.has_value() != o.d6.has_value()) return false;
  if (!d6) return true;
  return d6->t == o.d6->t && d6->s == o.d6->s && d6->n == o.d6->n;
}

Fingerprint fingerprint(const Algebra& a, std::uint64_t seed) {
  Fingerprint fp;
  fp.dim = a.dim();
  auto [lu, le] = solve_unit(a, true);
  auto [ru, re] = solve_unit(a, false);
  fp.has_left_unit = lu;
  fp.has_right_unit = ru;
  fp.has_unit = lu && ru && (le - re).cwiseAbs().maxCoeff() < a.tol();
  fp.has_central_idempotent = central_idempotent(a, seed);
  fp.nuclei_dims = nuclei(a).dims;
  fp.tder_dim = tder(a).dim;
  return fp;
}

Fingerprint fingerprint(const Algebra& a, std::uint64_t seed, const Mat& sigma,
                        const Mat& tau) {
  Fingerprint fp = fingerprint(a, seed);
  fp.d6 = d6_dims(sigma, tau);
  return fp;
}

}  // namespace divalg
