#include <doctest.h>

#include <functional>

#include "divalg/hurwitz.hpp"
#include "divalg/identity.hpp"
#include "divalg/rng.hpp"

using namespace divalg;

TEST_CASE("parser accepts the grammar") {
  const Identity id = parse_identity("x((yz)(xt)) = ((xy)(zx))t");
  CHECK(id.variables == std::vector<std::string>{"x", "y", "z", "t"});
  CHECK(print_identity(id) == "x((yz)(xt))=((xy)(zx))t");

  const Identity lc2 = parse_identity("x(x(yz)) = (x(xy))z");
  CHECK(print_identity(lc2) == "x(x(yz))=(x(xy))z");

  const Identity divs = parse_identity("x\\(xy) = (xy)/y");
  CHECK(divs.lhs->kind == Term::Kind::left_div);
  CHECK(divs.rhs->kind == Term::Kind::right_div);

  const Identity numbered = parse_identity("((x1x2)x3)x4 = x3((x2x1)x4)");
  CHECK(numbered.variables.size() == 4);
}

TEST_CASE("parser rejects bad input") {
  CHECK_THROWS_AS(parse_identity("xyz = x(yz)"), parse_error);   // ambiguous
  CHECK_THROWS_AS(parse_identity("x(yz = x(yz)"), parse_error);  // unbalanced
  CHECK_THROWS_AS(parse_identity("xy"), parse_error);            // missing '='
  CHECK_THROWS_AS(parse_identity("x$y = z"), parse_error);       // lexical
  CHECK_THROWS_AS(parse_identity("x\\y\\z = t"), parse_error);   // op chain
}

TEST_CASE("print-parse round trip on every catalog entry") {
  for (const char* family :
       {"table1", "bol-moufang", "moufang-bol", "involutive-inversion"}) {
    for (const auto& [key, id] : catalog_list(family)) {
      const std::string printed = print_identity(id);
      const Identity reparsed = parse_identity(printed);
      CHECK(print_identity(reparsed) == printed);
    }
  }
}

TEST_CASE("table1 transcription: 45 rows, multidegrees x3 y1 z1") {
  const auto rows = catalog_list("table1");
  REQUIRE(rows.size() == 45);
  auto degree = [](const TermPtr& t, const std::string& name) {
    int count = 0;
    std::function<void(const Term&)> walk = [&](const Term& node) {
      if (node.kind == Term::Kind::variable) {
        if (node.name == name) ++count;
        return;
      }
      walk(*node.lhs);
      walk(*node.rhs);
    };
    walk(*t);
    return count;
  };
  for (const auto& [key, id] : rows) {
    for (const TermPtr& side : {id.lhs, id.rhs}) {
      CHECK(degree(side, "x") == 3);
      CHECK(degree(side, "y") == 1);
      CHECK(degree(side, "z") == 1);
    }
  }
  CHECK(print_identity(catalog_table1(19)) == "((xx)(yx))z=x((xy)(xz))");
  CHECK(print_identity(catalog("bol-moufang", "LC3")) == "x(x(yz))=((xx)y)z");
  CHECK(print_identity(catalog("moufang-bol", "middle-moufang")) ==
        "(xy)(zx)=(x(yz))x");
  CHECK(catalog_list("bol-moufang").size() == 26);
  CHECK(catalog_list("moufang-bol").size() == 5);
  CHECK_THROWS_AS(catalog("table1", "46"), error);
  CHECK_THROWS_AS(catalog("bol-moufang", "XYZ"), error);
}

TEST_CASE("eval_term") {
  const Algebra o = hurwitz(8).algebra();
  Rng rng(67);
  const Identity round = parse_identity("x\\(xy) = y");
  for (int t = 0; t < 100; ++t) {
    Assignment a;
    a["x"] = rng.gaussian_vec(8);
    a["y"] = rng.gaussian_vec(8);
    if (a["x"].norm() < 1e-3) continue;
    const Vec lhs = eval_term(o, *round.lhs, a);
    CHECK((lhs - a["y"]).cwiseAbs().maxCoeff() <
          1e-10 * std::max(1.0, a["y"].norm()));
    const Vec xy_y = eval_term(o, *parse_identity("(xy)/y = x").lhs, a);
    CHECK((xy_y - a["x"]).cwiseAbs().maxCoeff() <
          1e-10 * std::max(1.0, a["x"].norm()));
  }
  Assignment missing;
  missing["x"] = rng.gaussian_vec(8);
  CHECK_THROWS_AS(eval_term(o, *round.lhs, missing), error);
}

TEST_CASE("is_balanced") {
  CHECK(is_balanced(parse_identity("((x1x2)x3)x4 = x3((x2x1)x4)")));
  CHECK(is_balanced(parse_identity("(xy)z = x(yz)")));
  CHECK_FALSE(is_balanced(parse_identity("x(x(yz)) = (x(xy))z")));
  CHECK_FALSE(is_balanced(parse_identity("x\\(xy) = y")));
  CHECK(is_balanced(parse_identity("xy = yx")));
  CHECK_FALSE(is_balanced(parse_identity("x(yz) = xy")));  // z missing
}

TEST_CASE("exact multilinear checking") {
  const Algebra h = hurwitz(4).algebra();
  const Identity assoc = parse_identity("(xy)z = x(yz)");
  const CheckReport ok = check_exact_multilinear(h, assoc);
  CHECK(ok.verdict == Verdict::holds);
  CHECK(ok.trials == 64);
  CHECK(ok.max_residual < 1e-12);

  const Algebra o = hurwitz(8).algebra();
  const CheckReport bad = check_exact_multilinear(o, assoc);
  CHECK(bad.verdict == Verdict::fails);
  REQUIRE(bad.witness.has_value());
  // The witness is a genuine basis counterexample.
  const Vec lhs = eval_term(o, *assoc.lhs, *bad.witness);
  const Vec rhs = eval_term(o, *assoc.rhs, *bad.witness);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() > 1e-4);

  CHECK_THROWS_AS(check_exact_multilinear(o, parse_identity("x(x(yz))=(x(xy))z")),
                  error);
}

TEST_CASE("sampled checking with divisions and rejection") {
  const Algebra o = hurwitz(8).algebra();
  SampleOptions opts;
  opts.trials = 300;
  opts.seed = 5;
  const CheckReport hold = check_sampled(o, parse_identity("x\\(xy) = y"), opts);
  CHECK(hold.verdict == Verdict::holds);
  const CheckReport fail = check_sampled(o, parse_identity("(xy)z = x(yz)"), opts);
  CHECK(fail.verdict == Verdict::fails);
  REQUIRE(fail.witness.has_value());

  // Thread fan-out must not change the outcome.
  SampleOptions threaded = opts;
  threaded.threads = 4;
  const CheckReport hold4 =
      check_sampled(o, parse_identity("x\\(xy) = y"), threaded);
  CHECK(hold4.verdict == Verdict::holds);
  CHECK(hold4.max_residual == doctest::Approx(hold.max_residual).epsilon(1e-12));
}

TEST_CASE("sampled and exact verdicts agree on balanced identities") {
  const std::vector<std::string> balanced = {
      "(xy)z = x(yz)",
      "((x1x2)x3)x4 = x3((x2x1)x4)",
  };
  SampleOptions opts;
  opts.trials = 200;
  opts.seed = 11;
  for (int dim : {1, 2, 4, 8}) {
    const Algebra a = hurwitz(dim).algebra();
    for (const std::string& src : balanced) {
      const Identity id = parse_identity(src);
      const CheckReport exact = check_exact_multilinear(a, id);
      const CheckReport sampled = check_sampled(a, id, opts);
      CHECK(exact.verdict == sampled.verdict);
    }
    const Identity p2 = generate_pn_identity(2);
    CHECK(check_exact_multilinear(a, p2).verdict ==
          check_sampled(a, p2, opts).verdict);
  }
}

TEST_CASE("p_n generator") {
  CHECK(print_identity(generate_pn_identity(1)) == "y(x1x2)=(yx1)x2");
  CHECK(print_identity(generate_pn_identity(2)) ==
        "y((x1x2)(x3x4))=((yx1)(x2x3))x4");
  const Identity p3 = generate_pn_identity(3);
  CHECK(p3.variables.size() == 9);
  CHECK(print_identity(p3) ==
        "y(((x1x2)(x3x4))((x5x6)(x7x8)))=(((yx1)(x2x3))((x4x5)(x6x7)))x8");
  CHECK_THROWS_AS(generate_pn_identity(0), error);
  CHECK_THROWS_AS(generate_pn_identity(6), error);
}

TEST_CASE("moufang and bol identities hold on alternative algebras") {
  SampleOptions opts;
  opts.trials = 300;
  opts.seed = 13;
  for (int dim : {4, 8}) {
    const Algebra a = hurwitz(dim).algebra();
    for (const auto& [key, id] : catalog_list("moufang-bol")) {
      const CheckReport rep = check_sampled(a, id, opts);
      CHECK(rep.verdict == Verdict::holds);
    }
  }
}

TEST_CASE("identity 19 equals the involutive-inversion identity in verdict") {
  SampleOptions opts;
  opts.trials = 200;
  opts.seed = 17;
  const Identity id19 = catalog_table1(19);
  const Identity inv = catalog("involutive-inversion", "identity");
  for (const std::string& label : invinv_labels()) {
    const Algebra a = invinv_algebra(label).algebra;
    CHECK(check_sampled(a, id19, opts).verdict ==
          check_sampled(a, inv, opts).verdict);
  }
  // A non-automorphism isotope of O fails both.
  const Algebra o = hurwitz(8).algebra();
  Rng rng(19);
  Mat phi = Mat::Identity(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) phi(i, j) += 0.3 * rng.gaussian();
  const Algebra twisted = o.isotope(phi, Mat::Identity(8, 8));
  CHECK(check_sampled(twisted, id19, opts).verdict == Verdict::fails);
  CHECK(check_sampled(twisted, inv, opts).verdict == Verdict::fails);
}

TEST_CASE("the shifted 4-factor identity holds on H_{kappa,I}") {
  // ((x1x2)x3)x4 = x3((x2x1)x4) reduces under associativity to
  // x1x2x3 = x3x2x1, so plain H fails it; the isotope x o y = conj(x) y is
  // the 4-dimensional representative that satisfies it exactly.
  const Identity id30 = parse_identity("((x1x2)x3)x4=x3((x2x1)x4)");
  const HurwitzAlgebra h = hurwitz(4);
  const Algebra hk =
      h.algebra().isotope(h.conjugation(), Mat::Identity(4, 4));
  const CheckReport rep = check_exact_multilinear(hk, id30);
  CHECK(rep.verdict == Verdict::holds);
  CHECK(rep.max_residual < 1e-12);
  CHECK(check_exact_multilinear(h.algebra(), id30).verdict == Verdict::fails);
}

TEST_CASE("even p_n holds on the associative-based invinv classes") {
  // The octonion classes cannot satisfy any non-trivial balanced identity
  // (they are not isotopes of associative algebras), so p_n even fails there;
  // the six classes over R, C, H do satisfy n = 2 and n = 4.
  SampleOptions opts;
  opts.trials = 120;
  opts.seed = 23;
  const Identity p2 = generate_pn_identity(2);
  const Identity p4 = generate_pn_identity(4);
  for (const std::string& label :
       {"R", "C-id", "C-conj", "H-id", "H-22", "H-111"}) {
    const Algebra a = invinv_algebra(label).algebra;
    CHECK(check_sampled(a, p2, opts).verdict == Verdict::holds);
    CHECK(check_sampled(a, p4, opts).verdict == Verdict::holds);
  }
  for (const std::string& label : {"O-id", "O-44", "O-222", "O-113"}) {
    const Algebra a = invinv_algebra(label).algebra;
    CHECK(check_sampled(a, p2, opts).verdict == Verdict::fails);
  }
  // sigma != tau classes fail odd n with a witness.
  const Identity p3 = generate_pn_identity(3);
  for (const std::string& label : {"H-111", "O-222", "O-113"}) {
    const Algebra a = invinv_algebra(label).algebra;
    const CheckReport rep = check_sampled(a, p3, opts);
    CHECK(rep.verdict == Verdict::fails);
    CHECK(rep.witness.has_value());
  }
}
