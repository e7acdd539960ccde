#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/types.hpp"

namespace divalg {

// SO(3)-set families: tuples (c, b, B, beta), with a leading projective u for
// the B1j families; c is projective in B00/B10 and affine in B01/B11.
enum class Family { b00, b01, b10, b11 };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

struct ClassDatum {
  Family family = Family::b00;
  std::optional<Vec3> u;  // projective; B10/B11 only
  Vec3 c = Vec3::Zero();  // projective for B00/B10, affine for B01/B11
  Vec3 b = Vec3::Zero();
  Mat3 bmat = Mat3::Identity();  // symmetric
  double beta = 0.0;
};

struct SymmetricDiagonalization {
  Vec3 d;         // ascending eigenvalues
  Mat3 rotation;  // R in SO(3) with R^T B R = diag(d)
  int stratum;    // 1: d1=d2=d3, 2: d1=d2<d3, 3: d1<d2=d3, 4: distinct
  double min_gap;
};

SymmetricDiagonalization diagonalize_symmetric(const Mat3& b,
                                               double degenerate_tol = 1e-9);

struct NormalFormRecord {
  int stratum = 0;
  Vec3 d = Vec3::Zero();
  ClassDatum canonical;
  Mat3 witness_rotation = Mat3::Identity();  // g with canonical ~ g . input
  bool near_degenerate = false;  // eigenvalue gap below 1e-3
};

// Canonicalizes the datum under the SO(3) action: diagonalizes B, then
// reduces (u, c, b) under the stratum stabilizer into the tabulated
// cross-section. Projective components are reported in their normalized
// representatives, so witness_rotation reproduces the canonical tuple only
// up to projective scaling.
NormalFormRecord reduce(const ClassDatum& datum);

// Tests the canonical tuple against the tabulated cross-section patterns.
bool membership(const NormalFormRecord& record, double tol = kDefaultTol);
bool membership(Family f, int stratum, const std::optional<Vec3>& u,
                const Vec3& c, const Vec3& b, double tol = kDefaultTol);

// ---- cross-section tables ------------------------------------------------
//
// Each block is one sign-pattern matrix: a 3-symbol column per component
// (u, c, b as applicable) with symbols
//   '1' exact one, '0' exact zero, 'P' strictly positive, 'N' nonnegative,
//   'R' free;
// or a whole-column composite "P1"/"P2" (the projective and Klein
// normal-position sets).
struct NormalFormBlock {
  std::optional<std::string> u;
  std::string c;
  std::string b;
};

// Blocks as printed (composite products unexpanded count as one entry each).
int normal_form_source_block_count(Family f, int stratum);
// Fully expanded pattern list used by membership().
const std::vector<NormalFormBlock>& normal_form_blocks(Family f, int stratum);

// ---- division-algebra construction ----------------------------------------

struct DivisionAlgebraDatum {
  Vec a;      // nonzero quaternion, projective
  Mat delta;  // 4x4 positive-definite symmetric, det 1
  Vec u;      // quaternion with u^2 in R1, projective
  int sign = +1;
};

// sign=+1: H_{L_a delta, R_u};  sign=-1: H_{R_a delta kappa, R_u}.
Algebra build_division_algebra(const DivisionAlgebraDatum& datum);

}  // namespace divalg
