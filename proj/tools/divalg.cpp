// divalg: build algebras, check quasigroup identities, compute structure
// invariants and normal forms. Exit codes: 0 pass/holds, 1 internal error,
// 2 usage or parse error, 3 identity fails, 4 inconclusive.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "divalg/algebra.hpp"
#include "divalg/hurwitz.hpp"
#include "divalg/identity.hpp"
#include "divalg/json_io.hpp"
#include "divalg/normal_form.hpp"
#include "divalg/structure.hpp"

namespace {

using namespace divalg;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFails = 3;
constexpr int kExitInconclusive = 4;

struct GlobalOpts {
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  long trials = 1000;
  int threads = 1;
  std::string format = "json";
};

bool color_enabled() { return std::getenv("NO_COLOR") == nullptr; }

std::string pass_fail(bool ok) {
  if (!color_enabled()) return ok ? "PASS" : "FAIL";
  return ok ? "\x1b[32mPASS\x1b[0m" : "\x1b[31mFAIL\x1b[0m";
}

void emit(const std::string& json_text, const GlobalOpts& g) {
  std::cout << json_text;
  (void)g;
}

Mat load_matrix(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw error(path + ": expected a " + std::to_string(dim) + "x" +
                std::to_string(dim) + " matrix as array of rows");
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != dim)
      throw error(path + ": ragged matrix");
    for (int k = 0; k < dim; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Algebra with_tol(Algebra a, double tol) {
  return Algebra(a.dim(), a.constants(), a.labels(), tol);
}

int cmd_algebra_build(const GlobalOpts& g, const std::optional<int>& hdim,
                      const std::string& invinv_label,
                      const std::string& opposite_path,
                      const std::string& isotope_path,
                      const std::string& alpha_path,
                      const std::string& beta_path, const std::string& out_path,
                      bool describe) {
  std::optional<Algebra> built;
  std::optional<InvInvSpec> spec;
  if (hdim) {
    built = hurwitz(*hdim).algebra();
  } else if (!invinv_label.empty()) {
    InvInvAlgebra inv = invinv_algebra(invinv_label);
    built = inv.algebra;
    spec = inv.spec;
  } else if (!opposite_path.empty()) {
    built = load_algebra(opposite_path).opposite();
  } else if (!isotope_path.empty()) {
    Algebra base = load_algebra(isotope_path);
    if (alpha_path.empty() || beta_path.empty())
      throw error("--isotope needs --alpha and --beta matrix files");
    built = base.isotope(load_matrix(alpha_path, base.dim()),
                         load_matrix(beta_path, base.dim()));
  } else {
    throw error("algebra build: pick one of --hurwitz/--invinv/--opposite/--isotope");
  }
  Algebra a = with_tol(*built, g.tol);
  if (!out_path.empty()) save_algebra(a, out_path);
  if (describe || out_path.empty()) {
    const Fingerprint fp = spec
                               ? fingerprint(a, g.seed, spec->sigma, spec->tau)
                               : fingerprint(a, g.seed);
    emit(fingerprint_to_json(fp), g);
  }
  return kExitOk;
}

int cmd_algebra_describe(const GlobalOpts& g, const std::string& path) {
  const Algebra a = with_tol(load_algebra(path), g.tol);
  emit(fingerprint_to_json(fingerprint(a, g.seed)), g);
  return kExitOk;
}

int cmd_identity_check(const GlobalOpts& g, const std::string& algebra_path,
                       const std::string& expr, const std::string& catalog_ref,
                       bool exact) {
  const Algebra a = with_tol(load_algebra(algebra_path), g.tol);
  Identity id;
  if (!expr.empty()) {
    id = parse_identity(expr);
  } else if (!catalog_ref.empty()) {
    const auto colon = catalog_ref.find(':');
    if (colon == std::string::npos)
      throw parse_error("--catalog expects family:key", 0);
    id = catalog(catalog_ref.substr(0, colon), catalog_ref.substr(colon + 1));
  } else {
    throw error("identity check: give --expr or --catalog");
  }

  CheckReport report;
  if (exact) {
    if (!is_balanced(id)) {
      std::cerr << "identity is not balanced; --exact requires a balanced "
                   "product-only identity\n";
      return kExitUsage;
    }
    report = check_exact_multilinear(a, id);
  } else {
    SampleOptions opts;
    opts.trials = g.trials;
    opts.seed = g.seed;
    opts.threads = g.threads;
    report = check_sampled(a, id, opts);
  }
  emit(check_report_to_json(report), g);
  switch (report.verdict) {
    case Verdict::holds: return kExitOk;
    case Verdict::fails: return kExitFails;
    default: return kExitInconclusive;
  }
}

int cmd_identity_catalog(const GlobalOpts& g, const std::string& family) {
  std::ostringstream out;
  out << "[";
  bool first = true;
  for (const auto& [key, id] : catalog_list(family)) {
    if (!first) out << ",";
    first = false;
    out << "\n{\"family\":\"" << family << "\",\"key\":\"" << key
        << "\",\"lhs\":\"";
    for (char ch : print_term(*id.lhs)) {
      if (ch == '\\') out << "\\\\";
      else out << ch;
    }
    out << "\",\"rhs\":\"";
    for (char ch : print_term(*id.rhs)) {
      if (ch == '\\') out << "\\\\";
      else out << ch;
    }
    out << "\"}";
  }
  out << "\n]\n";
  emit(out.str(), g);
  return kExitOk;
}

int cmd_tder(const GlobalOpts& g, const std::string& algebra_path) {
  const Algebra a = with_tol(load_algebra(algebra_path), g.tol);
  emit(tder_summary_to_json(tder(a)), g);
  return kExitOk;
}

int cmd_inversion(const GlobalOpts& g, const std::string& algebra_path,
                  int samples) {
  const Algebra a = with_tol(load_algebra(algebra_path), g.tol);
  emit(inversion_report_to_json(left_inversion(a, samples, g.seed)), g);
  return kExitOk;
}

int cmd_invinv_verify(const GlobalOpts& g) {
  bool all_ok = true;
  std::string first_failure;
  std::vector<Fingerprint> prints;
  const Identity id = catalog("involutive-inversion", "identity");
  for (const std::string& label : invinv_labels()) {
    const InvInvAlgebra inv = invinv_algebra(label);
    const int n = inv.spec.dim;
    const Mat idm = Mat::Identity(n, n);
    const Mat ts = inv.spec.tau * inv.spec.sigma;
    const double rel =
        std::max({(inv.spec.sigma * inv.spec.sigma - idm).norm(),
                  (inv.spec.tau * inv.spec.tau - idm).norm(),
                  (ts * ts * ts - idm).norm()});
    SampleOptions opts;
    opts.trials = g.trials;
    opts.seed = g.seed;
    opts.threads = g.threads;
    const CheckReport rep = check_sampled(inv.algebra, id, opts);
    const Fingerprint fp =
        fingerprint(inv.algebra, g.seed, inv.spec.sigma, inv.spec.tau);
    bool distinct = true;
    for (const Fingerprint& other : prints)
      if (fp == other) distinct = false;
    prints.push_back(fp);
    const bool ok =
        rel < 1e-10 && rep.verdict == Verdict::holds && distinct;
    if (!ok && first_failure.empty()) first_failure = label;
    all_ok = all_ok && ok;
    std::cout << label << ": relations " << rel << ", identity "
              << rep.max_residual << ", fingerprint "
              << (distinct ? "distinct" : "collision") << " -> "
              << pass_fail(ok) << "\n";
  }
  if (all_ok)
    std::cout << "10/10 pass\n";
  else
    std::cout << "verification failed; first failing check: " << first_failure
              << "\n";
  return all_ok ? kExitOk : kExitFails;
}

int cmd_normal_form(const GlobalOpts& g, const std::string& in_path,
                    const std::string& family_flag,
                    const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw error("cannot open " + in_path);
  std::stringstream buf;
  buf << in.rdbuf();
  ClassDatum datum = class_datum_from_json(buf.str());
  if (!family_flag.empty()) {
    const Family f = family_from_string(family_flag);
    if (f != datum.family)
      throw error("--family disagrees with the datum file");
  }
  const NormalFormRecord record = reduce(datum);
  const std::string text = normal_form_record_to_json(record);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw error("cannot write " + out_path);
    out << text;
  }
  emit(text, g);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"division-algebra toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "PRNG seed (default 42)");
  app.add_option("--tol", g.tol, "comparison tolerance");
  app.add_option("--trials", g.trials, "sampled-check trials");
  app.add_option("--threads", g.threads, "worker threads for sampled checks");
  app.add_option("--format", g.format, "output format: json|text");

  // algebra build/describe
  auto* algebra = app.add_subcommand("algebra", "build or describe algebras");
  algebra->require_subcommand(1);
  auto* build = algebra->add_subcommand("build", "construct an algebra");
  std::optional<int> hdim;
  std::string invinv_label, opposite_path, isotope_path, alpha_path, beta_path,
      out_path;
  bool describe = false;
  build->add_option("--hurwitz", hdim, "Hurwitz algebra dimension (1|2|4|8)");
  build->add_option("--invinv", invinv_label,
                    "involutive-inversion class label");
  build->add_option("--opposite", opposite_path, "opposite of a JSON algebra");
  build->add_option("--isotope", isotope_path, "base JSON algebra");
  build->add_option("--alpha", alpha_path, "isotope alpha matrix (JSON)");
  build->add_option("--beta", beta_path, "isotope beta matrix (JSON)");
  build->add_option("--out", out_path, "write the algebra JSON here");
  build->add_flag("--describe", describe, "print the fingerprint too");

  auto* desc = algebra->add_subcommand("describe", "fingerprint a JSON algebra");
  std::string describe_path;
  desc->add_option("input", describe_path, "algebra JSON path")->required();

  // identity check/catalog
  auto* identity = app.add_subcommand("identity", "check identities");
  identity->require_subcommand(1);
  auto* check = identity->add_subcommand("check", "evaluate an identity");
  std::string algebra_path, expr, catalog_ref;
  bool exact = false;
  check->add_option("--algebra", algebra_path, "algebra JSON path")->required();
  check->add_option("--expr", expr, "identity string, e.g. \"(xy)z=x(yz)\"");
  check->add_option("--catalog", catalog_ref, "catalog entry family:key");
  check->add_flag("--exact", exact, "exact multilinear mode");
  auto* cat = identity->add_subcommand("catalog", "list a catalog family");
  std::string family;
  cat->add_option("family", family, "table1|bol-moufang|moufang-bol|involutive-inversion")
      ->required();

  // structure commands
  auto* tder_cmd = app.add_subcommand("tder", "ternary-derivation summary");
  std::string tder_path;
  tder_cmd->add_option("--algebra", tder_path, "algebra JSON path")->required();

  auto* inv_cmd = app.add_subcommand("inversion", "left-inversion report");
  std::string inv_path;
  int inv_samples = 24;
  inv_cmd->add_option("--algebra", inv_path, "algebra JSON path")->required();
  inv_cmd->add_option("--samples", inv_samples, "sampled elements");

  auto* verify = app.add_subcommand(
      "invinv-verify", "verify the ten involutive-inversion classes");
  (void)verify;

  auto* nf = app.add_subcommand("normal-form", "reduce a classification datum");
  std::string nf_in, nf_family, nf_out;
  nf->add_option("--in", nf_in, "ClassDatum JSON path")->required();
  nf->add_option("--family", nf_family, "B00|B01|B10|B11 (cross-checked)");
  nf->add_option("--out", nf_out, "write the record here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build->parsed())
      return cmd_algebra_build(g, hdim, invinv_label, opposite_path,
                               isotope_path, alpha_path, beta_path, out_path,
                               describe);
    if (desc->parsed()) return cmd_algebra_describe(g, describe_path);
    if (check->parsed())
      return cmd_identity_check(g, algebra_path, expr, catalog_ref, exact);
    if (cat->parsed()) return cmd_identity_catalog(g, family);
    if (tder_cmd->parsed()) return cmd_tder(g, tder_path);
    if (inv_cmd->parsed()) return cmd_inversion(g, inv_path, inv_samples);
    if (app.got_subcommand("invinv-verify")) return cmd_invinv_verify(g);
    if (nf->parsed()) return cmd_normal_form(g, nf_in, nf_family, nf_out);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dimension_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const error& e) {
    const std::string what = e.what();
    // Schema and file problems are usage errors; numerical ones internal.
    if (what.find("JSON") != std::string::npos ||
        what.find("cannot open") != std::string::npos ||
        what.find("unknown") != std::string::npos ||
        what.find("expected") != std::string::npos ||
        what.find("--") != std::string::npos ||
        what.find("keys") != std::string::npos ||
        what.find("pick one") != std::string::npos ||
        what.find("give --expr") != std::string::npos) {
      std::cerr << "input error: " << what << "\n";
      return kExitUsage;
    }
    std::cerr << "error: " << what << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
