#pragma once

#include <string>

#include "divalg/algebra.hpp"
#include "divalg/identity.hpp"
#include "divalg/normal_form.hpp"
#include "divalg/structure.hpp"

namespace divalg {

// File schema "divalg/1":
// {"schema":"divalg/1","dim":n,"constants":[[[...]]],"labels":[...],"tol":t}
// with constants[i][j][k] = coefficient of e_k in e_i e_j. Writers emit 17
// significant digits with stable key order, so identical inputs produce
// byte-identical files.
std::string algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const std::string& text);
Algebra load_algebra(const std::string& path);
void save_algebra(const Algebra& a, const std::string& path);

std::string fingerprint_to_json(const Fingerprint& fp);
std::string check_report_to_json(const CheckReport& r);
std::string inversion_report_to_json(const InversionReport& r);
std::string tder_summary_to_json(const TderBasis& t);

std::string class_datum_to_json(const ClassDatum& d);
ClassDatum class_datum_from_json(const std::string& text);
std::string normal_form_record_to_json(const NormalFormRecord& r);

}  // namespace divalg
