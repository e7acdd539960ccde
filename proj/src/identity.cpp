#include "divalg/identity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <functional>
#include <thread>

#include "divalg/rng.hpp"

namespace divalg {

TermPtr Term::var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::variable;
  t->name = std::move(name);
  return t;
}

TermPtr Term::make(Kind k, TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  return t;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Identity parse() {
    TermPtr lhs = parse_expr();
    skip_ws();
    if (!eat('=')) fail("expected '='");
    TermPtr rhs = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input after identity");
    Identity id{std::move(lhs), std::move(rhs), {}};
    collect_vars(*id.lhs, id.variables);
    collect_vars(*id.rhs, id.variables);
    if (id.variables.empty()) fail("identity has no variables");
    return id;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool at_factor_start() {
    const char c = peek();
    return c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  TermPtr parse_factor() {
    skip_ws();
    if (eat('(')) {
      TermPtr inner = parse_expr();
      if (!eat(')')) fail("unbalanced parenthesis");
      return inner;
    }
    const char c = peek();
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected a variable or '('");
    std::string name(1, src_[pos_++]);
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      name.push_back(src_[pos_++]);
    return Term::var(std::move(name));
  }

  // expr = factor | factor factor | factor '\' factor | factor '/' factor.
  // A third bare factor (or a second operator) is ambiguous and rejected.
  TermPtr parse_expr() {
    TermPtr first = parse_factor();
    const char c = peek();
    Term::Kind kind;
    if (c == '\\')
      kind = Term::Kind::left_div;
    else if (c == '/')
      kind = Term::Kind::right_div;
    else if (at_factor_start())
      kind = Term::Kind::product;
    else
      return first;
    if (kind != Term::Kind::product) ++pos_;
    TermPtr second = parse_factor();
    if (at_factor_start() || peek() == '\\' || peek() == '/')
      fail("ambiguous chain of three or more factors; parenthesize");
    return Term::make(kind, std::move(first), std::move(second));
  }

  static void collect_vars(const Term& t, std::vector<std::string>& vars) {
    if (t.kind == Term::Kind::variable) {
      if (std::find(vars.begin(), vars.end(), t.name) == vars.end())
        vars.push_back(t.name);
      return;
    }
    collect_vars(*t.lhs, vars);
    collect_vars(*t.rhs, vars);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string print_factor(const Term& t) {
  if (t.kind == Term::Kind::variable) return t.name;
  return "(" + print_term(t) + ")";
}

}  // namespace

Identity parse_identity(std::string_view src) { return Parser(src).parse(); }

std::string print_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::variable:
      return t.name;
    case Term::Kind::product:
      return print_factor(*t.lhs) + print_factor(*t.rhs);
    case Term::Kind::left_div:
      return print_factor(*t.lhs) + "\\" + print_factor(*t.rhs);
    case Term::Kind::right_div:
      return print_factor(*t.lhs) + "/" + print_factor(*t.rhs);
  }
  throw error("unreachable term kind");
}

std::string print_identity(const Identity& id) {
  return print_term(*id.lhs) + "=" + print_term(*id.rhs);
}

namespace {

// Evaluation with optional rejection of near-singular division operands.
struct EvalContext {
  const Algebra& a;
  const Assignment& assignment;
  double max_condition;  // <= 0 disables the check
  bool rejected = false;
};

Vec eval_rec(EvalContext& ctx, const Term& t) {
  switch (t.kind) {
    case Term::Kind::variable: {
      auto it = ctx.assignment.find(t.name);
      if (it == ctx.assignment.end())
        throw error("eval_term: unassigned variable " + t.name);
      return it->second;
    }
    case Term::Kind::product:
      return ctx.a.multiply(eval_rec(ctx, *t.lhs), eval_rec(ctx, *t.rhs));
    case Term::Kind::left_div: {
      const Vec l = eval_rec(ctx, *t.lhs);
      const Vec r = eval_rec(ctx, *t.rhs);
      if (ctx.rejected) return r;
      if (ctx.max_condition > 0) {
        Eigen::JacobiSVD<Mat> svd(ctx.a.left_mul(l));
        const auto& s = svd.singularValues();
        if (!(s[s.size() - 1] * ctx.max_condition > s[0])) {
          ctx.rejected = true;
          return r;
        }
      }
      return ctx.a.left_divide(l, r);
    }
    case Term::Kind::right_div: {
      const Vec l = eval_rec(ctx, *t.lhs);
      const Vec r = eval_rec(ctx, *t.rhs);
      if (ctx.rejected) return l;
      if (ctx.max_condition > 0) {
        Eigen::JacobiSVD<Mat> svd(ctx.a.right_mul(r));
        const auto& s = svd.singularValues();
        if (!(s[s.size() - 1] * ctx.max_condition > s[0])) {
          ctx.rejected = true;
          return l;
        }
      }
      return ctx.a.right_divide(l, r);
    }
  }
  throw error("unreachable term kind");
}

void count_vars(const Term& t, std::map<std::string, int>& counts,
                bool& division_free) {
  if (t.kind == Term::Kind::variable) {
    ++counts[t.name];
    return;
  }
  if (t.kind != Term::Kind::product) division_free = false;
  count_vars(*t.lhs, counts, division_free);
  count_vars(*t.rhs, counts, division_free);
}

}  // namespace

Vec eval_term(const Algebra& a, const Term& t, const Assignment& assignment) {
  EvalContext ctx{a, assignment, 0.0};
  return eval_rec(ctx, t);
}

bool is_balanced(const Identity& id) {
  bool division_free = true;
  std::map<std::string, int> lhs_counts, rhs_counts;
  count_vars(*id.lhs, lhs_counts, division_free);
  count_vars(*id.rhs, rhs_counts, division_free);
  if (!division_free) return false;
  if (lhs_counts.size() != id.variables.size() ||
      rhs_counts.size() != id.variables.size())
    return false;
  for (const auto& [name, count] : lhs_counts)
    if (count != 1) return false;
  for (const auto& [name, count] : rhs_counts)
    if (count != 1) return false;
  return true;
}

CheckReport check_exact_multilinear(const Algebra& a, const Identity& id) {
  if (!is_balanced(id))
    throw error("check_exact_multilinear requires a balanced identity");
  const int nvars = static_cast<int>(id.variables.size());
  if (nvars > 6 && a.dim() > 8)
    throw error("check_exact_multilinear: identity too large for this dim");
  const int n = a.dim();

  std::vector<Vec> basis(n);
  for (int i = 0; i < n; ++i) {
    basis[i] = Vec::Zero(n);
    basis[i][i] = 1.0;
  }

  CheckReport report;
  report.mode = CheckReport::Mode::exact_multilinear;
  long tuples = 1;
  for (int v = 0; v < nvars; ++v) tuples *= n;
  report.trials = tuples;

  std::vector<int> index(nvars, 0);
  Assignment assignment;
  for (long t = 0; t < tuples; ++t) {
    long rem = t;
    for (int v = 0; v < nvars; ++v) {
      index[v] = static_cast<int>(rem % n);
      rem /= n;
    }
    for (int v = 0; v < nvars; ++v) assignment[id.variables[v]] = basis[index[v]];
    const Vec lhs = eval_term(a, *id.lhs, assignment);
    const Vec rhs = eval_term(a, *id.rhs, assignment);
    const double r = (lhs - rhs).cwiseAbs().maxCoeff();
    if (r > report.max_residual) {
      report.max_residual = r;
      if (r >= a.tol()) report.witness = assignment;
    }
  }
  report.verdict =
      report.max_residual < a.tol() ? Verdict::holds : Verdict::fails;
  if (report.verdict == Verdict::holds) report.witness.reset();
  return report;
}

CheckReport check_sampled(const Algebra& a, const Identity& id,
                          const SampleOptions& opts) {
  const int n = a.dim();
  CheckReport report;
  report.mode = CheckReport::Mode::sampled;
  report.trials = opts.trials;

  struct Partial {
    double max_residual = 0.0;
    long rejected = 0;
    std::optional<Assignment> worst;
  };

  auto run_range = [&](long begin, long end, Partial& out) {
    for (long t = begin; t < end; ++t) {
      Rng rng = Rng::stream(opts.seed, static_cast<std::uint64_t>(t));
      Assignment assignment;
      for (const auto& name : id.variables)
        assignment[name] = rng.gaussian_vec(n);
      EvalContext lctx{a, assignment, opts.max_condition};
      const Vec lhs = eval_rec(lctx, *id.lhs);
      EvalContext rctx{a, assignment, opts.max_condition};
      const Vec rhs = eval_rec(rctx, *id.rhs);
      if (lctx.rejected || rctx.rejected) {
        ++out.rejected;
        continue;
      }
      const double scale =
          std::max({1.0, lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()});
      const double r = (lhs - rhs).cwiseAbs().maxCoeff() / scale;
      if (r > out.max_residual) {
        out.max_residual = r;
        out.worst = assignment;
      }
    }
  };

  const int nthreads = static_cast<int>(
      std::max<long>(1, std::min<long>(opts.threads, opts.trials)));
  std::vector<Partial> parts(nthreads);
  if (nthreads == 1) {
    run_range(0, opts.trials, parts[0]);
  } else {
    std::vector<std::thread> workers;
    const long chunk = (opts.trials + nthreads - 1) / nthreads;
    for (int w = 0; w < nthreads; ++w)
      workers.emplace_back(run_range, w * chunk,
                           std::min<long>(opts.trials, (w + 1) * chunk),
                           std::ref(parts[w]));
    for (auto& th : workers) th.join();
  }
  for (const auto& p : parts) {
    report.rejected += p.rejected;
    if (p.max_residual > report.max_residual) {
      report.max_residual = p.max_residual;
      report.witness = p.worst;
    }
  }
  if (report.rejected >= report.trials)
    throw error("check_sampled: all draws rejected");

  if (report.max_residual < opts.hold_threshold)
    report.verdict = Verdict::holds;
  else if (report.max_residual > opts.fail_threshold)
    report.verdict = Verdict::fails;
  else
    report.verdict = Verdict::inconclusive;
  if (report.verdict != Verdict::fails) report.witness.reset();
  return report;
}

Identity generate_pn_identity(int n) {
  if (n < 1 || n > 5)
    throw error("generate_pn_identity: n must be between 1 and 5");
  const int count = 1 << n;
  std::function<TermPtr(const std::vector<TermPtr>&, int, int)> tree =
      [&](const std::vector<TermPtr>& leaves, int lo, int hi) -> TermPtr {
    if (hi - lo == 1) return leaves[lo];
    const int mid = lo + (hi - lo) / 2;
    return Term::make(Term::Kind::product, tree(leaves, lo, mid),
                      tree(leaves, mid, hi));
  };
  std::vector<TermPtr> xs;
  xs.reserve(count);
  for (int i = 1; i <= count; ++i) xs.push_back(Term::var("x" + std::to_string(i)));
  const TermPtr y = Term::var("y");

  std::vector<TermPtr> shifted;
  shifted.reserve(count);
  shifted.push_back(y);
  for (int i = 0; i + 1 < count; ++i) shifted.push_back(xs[i]);

  Identity id;
  id.lhs = Term::make(Term::Kind::product, y, tree(xs, 0, count));
  id.rhs = Term::make(Term::Kind::product, tree(shifted, 0, count), xs[count - 1]);
  id.variables.push_back("y");
  for (int i = 1; i <= count; ++i) id.variables.push_back("x" + std::to_string(i));
  return id;
}

}  // namespace divalg
