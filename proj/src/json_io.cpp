#include "divalg/json_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace divalg {

namespace {

// Writers are hand-emitted: fixed key order and %.17g doubles keep output
// byte-identical for identical inputs.
std::string fmt(double v) {
  if (v == 0.0) return "0";  // avoid "-0", which parsers fold to integer 0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string vec_json(const Vec& v) {
  std::string out = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out + "]";
}

std::string mat_json(const Mat& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += vec_json(m.row(i).transpose());
  }
  return out + "]";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    default: return "inconclusive";
  }
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::yes: return "true";
    case Tri::no: return "false";
    default: return "\"undetermined\"";
  }
}

}  // namespace

std::string algebra_to_json(const Algebra& a) {
  std::ostringstream out;
  out << "{\"schema\":\"divalg/1\",\"dim\":" << a.dim() << ",\"constants\":[";
  for (int i = 0; i < a.dim(); ++i) {
    if (i) out << ",";
    out << "[";
    for (int j = 0; j < a.dim(); ++j) {
      if (j) out << ",";
      out << "[";
      for (int k = 0; k < a.dim(); ++k) {
        if (k) out << ",";
        out << fmt(a.constant(i, j, k));
      }
      out << "]";
    }
    out << "]";
  }
  out << "]";
  if (!a.labels().empty()) {
    out << ",\"labels\":[";
    for (std::size_t i = 0; i < a.labels().size(); ++i) {
      if (i) out << ",";
      out << quote(a.labels()[i]);
    }
    out << "]";
  }
  out << ",\"tol\":" << fmt(a.tol()) << "}\n";
  return out.str();
}

Algebra algebra_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("algebra JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("constants"))
    throw error("algebra JSON: expected {schema, dim, constants, ...}");
  if (j.contains("schema") && j["schema"] != "divalg/1")
    throw error("algebra JSON: unsupported schema");
  const int dim = j["dim"].get<int>();
  if (dim <= 0) throw error("algebra JSON: dim must be positive");
  const auto& c = j["constants"];
  if (!c.is_array() || static_cast<int>(c.size()) != dim)
    throw error("algebra JSON: constants must be dim x dim x dim");
  std::vector<double> constants;
  constants.reserve(static_cast<std::size_t>(dim) * dim * dim);
  for (const auto& plane : c) {
    if (!plane.is_array() || static_cast<int>(plane.size()) != dim)
      throw error("algebra JSON: constants must be dim x dim x dim");
    for (const auto& fibre : plane) {
      if (!fibre.is_array() || static_cast<int>(fibre.size()) != dim)
        throw error("algebra JSON: constants must be dim x dim x dim");
      for (const auto& v : fibre) constants.push_back(v.get<double>());
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  const double tol = j.value("tol", kDefaultTol);
  return Algebra(dim, std::move(constants), std::move(labels), tol);
}

Algebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return algebra_from_json(buf.str());
}

void save_algebra(const Algebra& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << algebra_to_json(a);
}

std::string fingerprint_to_json(const Fingerprint& fp) {
  std::ostringstream out;
  out << "{\"schema\":\"divalg/1\",\"dim\":" << fp.dim
      << ",\"has_left_unit\":" << (fp.has_left_unit ? "true" : "false")
      << ",\"has_right_unit\":" << (fp.has_right_unit ? "true" : "false")
      << ",\"has_unit\":" << (fp.has_unit ? "true" : "false")
      << ",\"has_central_idempotent\":" << tri_name(fp.has_central_idempotent)
      << ",\"nuclei_dims\":[" << fp.nuclei_dims[0] << "," << fp.nuclei_dims[1]
      << "," << fp.nuclei_dims[2] << "]"
      << ",\"tder_dim\":" << fp.tder_dim;
  if (fp.d6)
    out << ",\"d6_dims\":[" << fp.d6->t << "," << fp.d6->s << "," << fp.d6->n
        << "]";
  out << "}\n";
  return out.str();
}

std::string check_report_to_json(const CheckReport& r) {
  std::ostringstream out;
  out << "{\"schema\":\"divalg/1\",\"mode\":"
      << (r.mode == CheckReport::Mode::exact_multilinear
              ? "\"exact-multilinear\""
              : "\"sampled\"")
      << ",\"trials\":" << r.trials << ",\"rejected\":" << r.rejected
      << ",\"max_residual\":" << fmt(r.max_residual) << ",\"verdict\":\""
      << verdict_name(r.verdict) << "\"";
  if (r.witness) {
    out << ",\"witness\":{";
    bool first = true;
    for (const auto& [name, value] : *r.witness) {
      if (!first) out << ",";
      first = false;
      out << quote(name) << ":" << vec_json(value);
    }
    out << "}";
  }
  out << "}\n";
  return out.str();
}

std::string inversion_report_to_json(const InversionReport& r) {
  std::ostringstream out;
  out << "{\"schema\":\"divalg/1\",\"has_left_inversion\":"
      << (r.has_left_inversion ? "true" : "false")
      << ",\"max_witness_residual\":" << fmt(r.max_witness_residual)
      << ",\"samples\":" << r.samples.size();
  if (r.has_left_inversion)
    out << ",\"involutive\":" << (r.involutive ? "true" : "false")
        << ",\"involutive_residual\":" << fmt(r.involutive_residual);
  out << "}\n";
  return out.str();
}

std::string tder_summary_to_json(const TderBasis& t) {
  std::ostringstream out;
  out << "{\"schema\":\"divalg/1\",\"dim\":" << t.dim << ",\"projection_dims\":["
      << t.projection_dims[0] << "," << t.projection_dims[1] << ","
      << t.projection_dims[2] << "],\"kernel_dims\":[" << t.kernel_dims[0]
      << "," << t.kernel_dims[1] << "," << t.kernel_dims[2]
      << "],\"spectral_gap\":" << fmt(t.spectral_gap) << "}\n";
  return out.str();
}

std::string class_datum_to_json(const ClassDatum& d) {
  std::ostringstream out;
  out << "{\"schema\":\"divalg/1\",\"family\":"
      << quote(family_to_string(d.family));
  if (d.u) out << ",\"u\":" << vec_json(*d.u);
  out << ",\"c\":" << vec_json(d.c) << ",\"b\":" << vec_json(d.b)
      << ",\"B\":" << mat_json(d.bmat) << ",\"beta\":" << fmt(d.beta) << "}\n";
  return out.str();
}

ClassDatum class_datum_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("datum JSON: ") + e.what());
  }
  auto vec3 = [&](const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 3) throw error("datum JSON: expected 3-vector");
    return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  };
  ClassDatum d;
  if (!j.contains("family")) throw error("datum JSON: missing family");
  d.family = family_from_string(j["family"].get<std::string>());
  if (j.contains("u")) d.u = vec3(j["u"]);
  d.c = vec3(j.at("c"));
  d.b = vec3(j.at("b"));
  const auto& bm = j.at("B");
  if (!bm.is_array() || bm.size() != 3) throw error("datum JSON: B must be 3x3");
  for (int i = 0; i < 3; ++i) {
    if (!bm[i].is_array() || bm[i].size() != 3)
      throw error("datum JSON: B must be 3x3");
    for (int k = 0; k < 3; ++k) d.bmat(i, k) = bm[i][k].get<double>();
  }
  d.beta = j.value("beta", 0.0);
  return d;
}

std::string normal_form_record_to_json(const NormalFormRecord& r) {
  std::ostringstream out;
  out << "{\"schema\":\"divalg/1\",\"family\":"
      << quote(family_to_string(r.canonical.family))
      << ",\"stratum\":" << r.stratum << ",\"d\":" << vec_json(r.d);
  if (r.canonical.u) out << ",\"u\":" << vec_json(*r.canonical.u);
  out << ",\"c\":" << vec_json(r.canonical.c)
      << ",\"b\":" << vec_json(r.canonical.b)
      << ",\"beta\":" << fmt(r.canonical.beta)
      << ",\"near_degenerate\":" << (r.near_degenerate ? "true" : "false")
      << ",\"member\":" << (membership(r) ? "true" : "false")
      << ",\"witness_rotation\":" << mat_json(r.witness_rotation) << "}\n";
  return out.str();
}

}  // namespace divalg
