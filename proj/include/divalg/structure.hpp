#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/types.hpp"

namespace divalg {

// Orthonormal basis of the ternary-derivation space
// {(d1,d2,d3) : d1(xy) = d2(x)y + x d3(y)}.
struct TderBasis {
  std::vector<std::array<Mat, 3>> triples;
  int dim = 0;
  std::array<int, 3> projection_dims{};  // dims of pi_i images
  std::array<int, 3> kernel_dims{};      // dims of ker pi_i
  double spectral_gap = 0.0;             // sigma_r / sigma_{r+1} at the cut
};

TderBasis tder(const Algebra& a);

struct NucleiReport {
  Mat left_basis, middle_basis, right_basis;  // orthonormal columns
  std::array<int, 3> dims{};
  std::array<double, 3> gaps{};
};

NucleiReport nuclei(const Algebra& a);

struct InversionReport {
  bool has_left_inversion = false;
  double max_witness_residual = 0.0;
  std::vector<std::pair<Vec, Vec>> samples;  // (a, s(a))
  bool involutive = false;
  double involutive_residual = 0.0;
};

// For sampled nonzero a, solves L_a^{-1} = L_b in the least-squares sense
// (b -> L_b is linear); inversion holds when every residual is below tol.
// When it holds, involutivity s(ab) = s(b)s(a) is tested on sampled pairs.
InversionReport left_inversion(const Algebra& a, int samples,
                               std::uint64_t seed);

struct CriterionReport {
  bool factors = false;          // beta = L_a R_u with u^2 in R1
  double delta_residual = 0.0;   // distance of the PDS factor from rho*I
  double u_square_residual = 0.0;
  bool agrees_with_direct = false;  // cross-check vs left_inversion
};

// Quaternion-only test whether beta = L_a R_u with u^2 in R1, by polar
// decomposition and the L/R factorization of SO(4); cross-checked against
// the direct left_inversion oracle on H_{alpha,beta}.
CriterionReport criterion_check(const Mat& alpha, const Mat& beta,
                                std::uint64_t seed = 42);

// max over basis pairs of |phi(e_i e_j) - phi(e_i) phi(e_j)|.
double morphism_residual(const Algebra& a, const Algebra& b, const Mat& phi);

struct D6Dims {
  int t = 0, s = 0, n = 0;
};

struct D6Spaces {
  Mat t_basis, s_basis, n_basis;  // orthonormal columns
};

// Requires sigma^2 = tau^2 = (tau sigma)^3 = I at tol; throws otherwise.
D6Dims d6_dims(const Mat& sigma, const Mat& tau, double tol = kDefaultTol);
D6Spaces d6_spaces(const Mat& sigma, const Mat& tau, double tol = kDefaultTol);

enum class Tri { no, yes, undetermined };

struct Fingerprint {
  int dim = 0;
  bool has_left_unit = false;
  bool has_right_unit = false;
  bool has_unit = false;
  Tri has_central_idempotent = Tri::undetermined;
  std::array<int, 3> nuclei_dims{};
  int tder_dim = 0;
  std::optional<D6Dims> d6;

  // Equality of the algebra-intrinsic fields (ignores d6).
  bool core_equals(const Fingerprint& o) const;
  bool operator==(const Fingerprint& o) const;
};

Fingerprint fingerprint(const Algebra& a, std::uint64_t seed);
// Attaches d6 dims computed from an involutive pair carried by the algebra.
Fingerprint fingerprint(const Algebra& a, std::uint64_t seed, const Mat& sigma,
                        const Mat& tau);

}  // namespace divalg
