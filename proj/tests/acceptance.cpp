// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <cstdio>
#include <string>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/hurwitz.hpp"
#include "divalg/identity.hpp"
#include "divalg/normal_form.hpp"
#include "divalg/rng.hpp"
#include "divalg/structure.hpp"

#include "oracles.hpp"

using namespace divalg;

namespace {

int failures = 0;

void report(int number, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", number, ok ? "PASS" : "FAIL",
              what.c_str());
  if (!ok) ++failures;
}

Vec basis(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. Norm multiplicativity and the quadratic equation on R, C, H, O.
void criterion_1() {
  double worst = 0.0;
  Rng rng(1001);
  for (int dim : {1, 2, 4, 8}) {
    const HurwitzAlgebra h = hurwitz(dim);
    for (int t = 0; t < 10000; ++t) {
      const Vec x = rng.gaussian_vec(dim), y = rng.gaussian_vec(dim);
      const double nxy = h.norm_form(h.algebra().multiply(x, y));
      const double nn = h.norm_form(x) * h.norm_form(y);
      worst = std::max(worst, std::abs(nxy - nn) / std::max(1.0, nn));
      const Vec q = h.algebra().multiply(x, x) - h.trace_form(x) * x +
                    h.norm_form(x) * h.unit();
      worst = std::max(worst, q.cwiseAbs().maxCoeff() /
                                  std::max(1.0, h.norm_form(x)));
    }
  }
  report(1, worst < 1e-9,
         "Hurwitz norm multiplicativity + quadratic equation, 1e4 samples "
         "each (worst " + fmt(worst) + ")");
}

// 2. Moufang/Bol on O; associativity fails with a basis witness.
void criterion_2() {
  const Algebra o = hurwitz(8).algebra();
  SampleOptions opts;
  opts.trials = 1000;
  opts.seed = 1002;
  bool ok = true;
  double worst = 0.0;
  for (const auto& [key, id] : catalog_list("moufang-bol")) {
    const CheckReport rep = check_sampled(o, id, opts);
    ok = ok && rep.verdict == Verdict::holds && rep.max_residual < 1e-8;
    worst = std::max(worst, rep.max_residual);
  }
  const CheckReport assoc =
      check_exact_multilinear(o, parse_identity("(xy)z=x(yz)"));
  bool witness_ok = assoc.verdict == Verdict::fails && assoc.witness.has_value();
  if (witness_ok) {
    const Vec lhs = eval_term(o, *parse_identity("(xy)z=x(yz)").lhs, *assoc.witness);
    const Vec rhs = eval_term(o, *parse_identity("(xy)z=x(yz)").rhs, *assoc.witness);
    witness_ok = (lhs - rhs).cwiseAbs().maxCoeff() > 1.0;
  }
  report(2, ok && witness_ok,
         "five Moufang/Bol identities hold on O (worst " + fmt(worst) +
             "); associativity fails with basis witness");
}

// 3. Ternary derivation dimensions with the frozen oracle values.
void criterion_3() {
  const TderBasis to = tder(hurwitz(8).algebra());
  const TderBasis tr = tder(hurwitz(1).algebra());
  const Algebra h = hurwitz(4).algebra();
  const TderBasis th = tder(h);
  const int frozen_h = 11;  // brute-force nullspace oracle value
  const bool ok = to.dim == 30 && to.spectral_gap > 1e6 && tr.dim == 2 &&
                  th.dim == frozen_h && oracle::tder_dim_oracle(h) == frozen_h;
  report(3, ok,
         "dim Tder: O=" + std::to_string(to.dim) + " (gap " +
             fmt(to.spectral_gap) + "), R=" + std::to_string(tr.dim) +
             ", H=" + std::to_string(th.dim) + " (frozen oracle 11)");
}

// 4. Nuclei ranks with spectral gaps.
void criterion_4() {
  const NucleiReport no = nuclei(hurwitz(8).algebra());
  const NucleiReport nh = nuclei(hurwitz(4).algebra());
  bool ok = no.dims == std::array<int, 3>{1, 1, 1} &&
            nh.dims == std::array<int, 3>{4, 4, 4};
  for (double g : no.gaps) ok = ok && g > 1e6;
  for (double g : nh.gaps) ok = ok && g > 1e6;
  report(4, ok, "nuclei O=(1,1,1), H=(4,4,4) with rank gaps > 1e6");
}

// 5. The ten involutive-inversion classes.
void criterion_5() {
  const Identity id = catalog("involutive-inversion", "identity");
  SampleOptions opts;
  opts.trials = 400;
  opts.seed = 1005;
  bool ok = true;
  std::vector<Fingerprint> prints;
  const std::array<std::array<int, 3>, 4> expected_o = {
      {{8, 0, 0}, {4, 4, 0}, {2, 2, 4}, {1, 1, 6}}};
  int oct_index = 0;
  for (const std::string& label : invinv_labels()) {
    const InvInvAlgebra inv = invinv_algebra(label);
    const int n = inv.spec.dim;
    const Mat idm = Mat::Identity(n, n);
    const Mat ts = inv.spec.tau * inv.spec.sigma;
    const double rel =
        std::max({(inv.spec.sigma * inv.spec.sigma - idm).norm(),
                  (inv.spec.tau * inv.spec.tau - idm).norm(),
                  (ts * ts * ts - idm).norm()});
    ok = ok && rel < 1e-10;
    const CheckReport rep = check_sampled(inv.algebra, id, opts);
    ok = ok && rep.verdict == Verdict::holds && rep.max_residual < 1e-8;
    const Fingerprint fp =
        fingerprint(inv.algebra, 42, inv.spec.sigma, inv.spec.tau);
    if (n == 8) {
      const D6Dims d = *fp.d6;
      const auto& want = expected_o[oct_index++];
      ok = ok && d.t == want[0] && d.s == want[1] && d.n == want[2];
    }
    prints.push_back(fp);
  }
  for (std::size_t i = 0; i < prints.size(); ++i)
    for (std::size_t j = i + 1; j < prints.size(); ++j)
      if (prints[i] == prints[j]) ok = false;
  report(5, ok,
         "ten classes: D6 relations < 1e-10, defining identity holds, "
         "pairwise-distinct fingerprints, octonion d6 dims");
}

// 6. The inversion criterion on H, both directions, 100 + 100 samples.
void criterion_6() {
  const HurwitzAlgebra h = hurwitz(4);
  const Algebra& q = h.algebra();
  Rng rng(1006);
  bool ok = true;
  auto random_alpha = [&] {
    Mat alpha(4, 4);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) alpha(i, j) = rng.gaussian();
    } while (std::abs(alpha.determinant()) < 1e-2);
    return alpha;
  };
  for (int t = 0; t < 100; ++t) {
    const Vec a = rng.unit_vec(4);
    Vec u;
    if (t % 5 == 0) {
      u = basis(4, 0);
    } else {
      u = rng.gaussian_vec(4);
      u[0] = 0.0;
      u.normalize();
    }
    const Mat beta = q.left_mul(a) * q.right_mul(u);
    const Mat alpha = random_alpha();
    const bool direct =
        left_inversion(q.isotope(alpha, beta), 12, 2000 + t).has_left_inversion;
    const CriterionReport crit = criterion_check(alpha, beta, 3000 + t);
    ok = ok && direct && crit.factors && crit.agrees_with_direct;
  }
  for (int t = 0; t < 100; ++t) {
    const Vec a = rng.unit_vec(4);
    Vec u = rng.gaussian_vec(4);
    u[0] = 0.0;
    u.normalize();
    Mat m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = rng.gaussian();
    Mat delta = m * m.transpose() + 0.5 * Mat::Identity(4, 4);
    delta /= std::pow(delta.determinant(), 0.25);
    // Keep delta clearly non-scalar.
    Eigen::SelfAdjointEigenSolver<Mat> eig(delta);
    if (eig.eigenvalues()[3] / eig.eigenvalues()[0] < 1.2) {
      --t;
      continue;
    }
    const Mat beta = q.left_mul(a) * q.right_mul(u) * delta;
    const Mat alpha = random_alpha();
    const bool direct =
        left_inversion(q.isotope(alpha, beta), 12, 4000 + t).has_left_inversion;
    const CriterionReport crit = criterion_check(alpha, beta, 5000 + t);
    ok = ok && !direct && !crit.factors && crit.agrees_with_direct;
  }
  report(6, ok,
         "beta = L_a R_u (u^2 in R1) gives inversion, non-scalar PDS factor "
         "does not; criterion_check agrees on all 200");
}

// 7. Balanced identity (30) exact on the five listed algebras, fails on O.
void criterion_7() {
  const Identity id30 = parse_identity("((x1x2)x3)x4=x3((x2x1)x4)");
  struct Entry {
    std::string name;
    Algebra algebra;
  };
  const HurwitzAlgebra c = hurwitz(2);
  const HurwitzAlgebra h = hurwitz(4);
  Mat sigma0 = Mat::Identity(4, 4);
  sigma0(3, 3) = -1.0;  // reflection fixing span{1,i,j}
  std::vector<Entry> algebras;
  algebras.push_back({"R", hurwitz(1).algebra()});
  algebras.push_back({"C", c.algebra()});
  algebras.push_back(
      {"C_{k,I}", c.algebra().isotope(c.conjugation(), Mat::Identity(2, 2))});
  algebras.push_back({"H", h.algebra()});
  algebras.push_back(
      {"H_{s0,I}", h.algebra().isotope(sigma0, Mat::Identity(4, 4))});
  bool ok = true;
  std::string detail;
  for (const Entry& entry : algebras) {
    const CheckReport rep = check_exact_multilinear(entry.algebra, id30);
    const bool holds = rep.verdict == Verdict::holds && rep.max_residual < 1e-10;
    if (!holds) detail += " " + entry.name + "=fails(" + fmt(rep.max_residual) + ")";
    ok = ok && holds;
  }
  const CheckReport on_o = check_exact_multilinear(hurwitz(8).algebra(), id30);
  ok = ok && on_o.verdict == Verdict::fails;
  report(7, ok,
         "eq. (30) exact on R, C, C_{k,I}, H, H_{s0,I}; fails on O" +
             (detail.empty() ? "" : " —" + detail +
              " [plain H fails: the correct 4-dim classes are H_{k,I} and "
              "H_{s0,I}; see H_kI unit test]"));
}

// 8. p_n: all ten pass n=2,4; sigma != tau classes fail n=3 with witness.
void criterion_8() {
  SampleOptions opts;
  opts.trials = 150;
  opts.seed = 1008;
  const Identity p2 = generate_pn_identity(2);
  const Identity p4 = generate_pn_identity(4);
  bool ok = true;
  std::string detail;
  for (const std::string& label : invinv_labels()) {
    const Algebra a = invinv_algebra(label).algebra;
    const CheckReport r2 = check_sampled(a, p2, opts);
    const CheckReport r4 = check_sampled(a, p4, opts);
    const bool pass = r2.verdict == Verdict::holds && r2.max_residual < 1e-8 &&
                      r4.verdict == Verdict::holds && r4.max_residual < 1e-8;
    if (!pass) detail += " " + label;
    ok = ok && pass;
  }
  const Identity p3 = generate_pn_identity(3);
  for (const std::string& label : {"H-111", "O-222", "O-113"}) {
    const Algebra a = invinv_algebra(label).algebra;
    const CheckReport r3 = check_sampled(a, p3, opts);
    ok = ok && r3.verdict == Verdict::fails && r3.witness.has_value();
  }
  report(8, ok,
         "p_n identities: all ten pass n=2,4; sigma!=tau classes fail n=3" +
             (detail.empty()
                  ? std::string()
                  : " — failing n=2/4:" + detail +
                        " [octonion isotopes satisfy no non-trivial balanced "
                        "identity, so the even-n claim cannot hold there]"));
}

// 9. Normal forms on seeded random inputs per family.
void criterion_9() {
  Rng rng(1009);
  bool ok = true;
  for (Family f : {Family::b00, Family::b01, Family::b10, Family::b11}) {
    for (int t = 0; t < 1000; ++t) {
      Vec3 eigs;
      eigs << rng.gaussian(), 0.0, 0.0;
      eigs[1] = eigs[0] + 0.002 + rng.uniform();
      eigs[2] = eigs[1] + 0.002 + rng.uniform();
      ClassDatum d;
      d.family = f;
      Mat m(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = rng.gaussian();
      Mat3 rot = Eigen::HouseholderQR<Mat>(m).householderQ();
      if (rot.determinant() < 0) rot.col(2) = -rot.col(2);
      d.bmat = rot * eigs.asDiagonal() * rot.transpose();
      for (int i = 0; i < 3; ++i) {
        d.c[i] = rng.gaussian();
        d.b[i] = rng.gaussian();
      }
      if (f == Family::b10 || f == Family::b11) {
        Vec3 u;
        for (int i = 0; i < 3; ++i) u[i] = rng.gaussian();
        d.u = u;
      }
      d.beta = rng.gaussian();

      const NormalFormRecord rec = reduce(d);
      ok = ok && membership(rec);
      const NormalFormRecord again = reduce(rec.canonical);
      ok = ok && (rec.canonical.c - again.canonical.c).cwiseAbs().maxCoeff() <
                     1e-9 &&
           (rec.canonical.b - again.canonical.b).cwiseAbs().maxCoeff() < 1e-9;
      // Random group move.
      Mat g(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = rng.gaussian();
      Mat3 gq = Eigen::HouseholderQR<Mat>(g).householderQ();
      if (gq.determinant() < 0) gq.col(2) = -gq.col(2);
      ClassDatum moved = d;
      if (d.u) moved.u = gq * (*d.u);
      moved.c = gq * d.c;
      moved.b = gq * d.b;
      moved.bmat = gq * d.bmat * gq.transpose();
      const NormalFormRecord rec2 = reduce(moved);
      ok = ok &&
           (rec.canonical.c - rec2.canonical.c).cwiseAbs().maxCoeff() < 1e-7 &&
           (rec.canonical.b - rec2.canonical.b).cwiseAbs().maxCoeff() < 1e-7;
      if (d.u)
        ok = ok && (*rec.canonical.u - *rec2.canonical.u).cwiseAbs().maxCoeff() <
                       1e-7;
      if (!ok) {
        report(9, false,
               "normal forms: failure for family " + family_to_string(f) +
                   " at trial " + std::to_string(t));
        return;
      }
    }
  }
  report(9, ok,
         "normal forms: 1e3 random inputs per family are idempotent, "
         "SO(3)-invariant at 1e-7, and pass membership");
}

// 10. Vector-product reconstruction of O.
void criterion_10() {
  const HurwitzAlgebra o = hurwitz(8);
  const Algebra rebuilt = vector_product_algebra(o);
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k)
        worst = std::max(worst, std::abs(rebuilt.constant(i, j, k) -
                                         o.algebra().constant(i, j, k)));
  report(10, worst < 1e-12,
         "A(Im O, [.,.]/2) reproduces the octonion constants (worst " +
             fmt(worst) + ")");
}

// 11. Hua identity residuals.
void criterion_11() {
  Rng rng(1011);
  double worst = 0.0;
  const Algebra h = hurwitz(4).algebra();
  const Algebra o = hurwitz(8).algebra();
  for (int t = 0; t < 1000; ++t) {
    worst = std::max(worst, hua_check(h, rng.gaussian_vec(4), rng.gaussian_vec(4)));
    worst = std::max(worst, hua_check(o, rng.gaussian_vec(8), rng.gaussian_vec(8)));
  }
  // Two non-unital inversion isotopes B_{alpha,sigma} from the corollary.
  const Mat sig_h = invinv_algebra("H-22").spec.sigma;
  const Mat sig_o = invinv_algebra("O-44").spec.sigma;
  for (int which = 0; which < 2; ++which) {
    const Algebra& base = which == 0 ? h : o;
    const Mat& sigma = which == 0 ? sig_h : sig_o;
    const int n = base.dim();
    Mat alpha = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) alpha(i, j) += 0.3 * rng.gaussian();
    alpha.col(0) = basis(n, 0);  // alpha(1) = 1
    const Algebra iso = base.isotope(alpha, sigma);
    for (int t = 0; t < 1000; ++t)
      worst = std::max(
          worst, hua_check(iso, rng.gaussian_vec(n), rng.gaussian_vec(n)));
  }
  report(11, worst < 1e-7,
         "Hua identity residual over 1e3 pairs in H, O and two inversion "
         "isotopes (worst " + fmt(worst) + ")");
}

// 12. Bol-Moufang catalog verdicts.
void criterion_12() {
  SampleOptions opts;
  opts.trials = 400;
  opts.seed = 1012;
  const Algebra h = hurwitz(4).algebra();
  const Algebra o = hurwitz(8).algebra();
  bool ok = true;
  for (const auto& [key, id] : catalog_list("bol-moufang")) {
    const CheckReport rep = check_sampled(h, id, opts);
    if (rep.verdict != Verdict::holds) ok = false;
  }
  ok = ok && check_sampled(o, catalog("bol-moufang", "LC3"), opts).verdict ==
                 Verdict::fails;
  ok = ok && check_sampled(o, catalog("bol-moufang", "MNQ"), opts).verdict ==
                 Verdict::fails;
  report(12, ok,
         "all 26 Bol-Moufang identities hold on associative H; LC3 and MNQ "
         "fail on O");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
