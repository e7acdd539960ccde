#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/types.hpp"

namespace divalg {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Quasigroup term over {product, left division \, right division /}.
struct Term {
  enum class Kind { variable, product, left_div, right_div };

  Kind kind;
  std::string name;  // variable only
  TermPtr lhs, rhs;  // binary nodes only

  static TermPtr var(std::string name);
  static TermPtr make(Kind k, TermPtr l, TermPtr r);
};

struct Identity {
  TermPtr lhs, rhs;
  std::vector<std::string> variables;  // in order of first appearance
};

// Grammar: variable = letter digits*; factor = variable | '(' expr ')';
// expr = factor | factor factor | factor '\' factor | factor '/' factor;
// identity = expr '=' expr. Unparenthesized chains of three or more factors
// are ambiguous and rejected.
Identity parse_identity(std::string_view src);

std::string print_term(const Term& t);
std::string print_identity(const Identity& id);

using Assignment = std::map<std::string, Vec>;

Vec eval_term(const Algebra& a, const Term& t, const Assignment& assignment);

// Product-only and every variable of degree one on each side.
bool is_balanced(const Identity& id);

enum class Verdict { holds, fails, inconclusive };

struct CheckReport {
  enum class Mode { exact_multilinear, sampled };
  Mode mode;
  long trials = 0;
  long rejected = 0;
  double max_residual = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::optional<Assignment> witness;  // present when verdict == fails
};

// Evaluates both sides on all dim^n basis assignments; exact because both
// sides are multilinear. Requires is_balanced; refuses more than 6 variables
// when dim > 8.
CheckReport check_exact_multilinear(const Algebra& a, const Identity& id);

struct SampleOptions {
  long trials = 1000;
  std::uint64_t seed = 42;
  double hold_threshold = 1e-8;
  double fail_threshold = 1e-4;
  double max_condition = 1e8;  // division-operand rejection cutoff
  int threads = 1;
};

CheckReport check_sampled(const Algebra& a, const Identity& id,
                          const SampleOptions& opts = {});

// Catalog families: "table1" (keys "1".."45"), "bol-moufang" (26 variety
// names), "moufang-bol" (5), "involutive-inversion" (1).
Identity catalog(const std::string& family, const std::string& key);
Identity catalog_table1(int index);
std::vector<std::pair<std::string, Identity>> catalog_list(
    const std::string& family);

// y p_n(x1..x_{2^n}) = p_n(y,x1..x_{2^n - 1}) x_{2^n} with p_n the complete
// product tree. n <= 5.
Identity generate_pn_identity(int n);

}  // namespace divalg
