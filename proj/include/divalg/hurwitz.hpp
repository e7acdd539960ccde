#pragma once

#include <string>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/types.hpp"

namespace divalg {

// R, C, H, O with the standard Cayley-Dickson constants (all doubling
// parameters -1), basis ordered 1, i, j, ij, l, il, jl, (ij)l. The standard
// basis is orthonormal for the norm form.
class HurwitzAlgebra {
 public:
  explicit HurwitzAlgebra(int dim);

  int dim() const { return alg_.dim(); }
  const Algebra& algebra() const { return alg_; }

  Vec unit() const;
  double norm_form(const Vec& x) const { return x.squaredNorm(); }
  double trace_form(const Vec& x) const { return 2.0 * x[0]; }
  Mat conjugation() const;
  Vec conjugate(const Vec& x) const;
  // x^{-1} = conj(x) / n(x); throws singular_error when n(x) <= tol.
  Vec inverse(const Vec& x) const;

 private:
  Algebra alg_;
};

HurwitzAlgebra hurwitz(int dim);

struct CayleyTriple {
  Vec u, v, z;
};

// Max violation of the Cayley-triple conditions: u,v,z unit imaginary with
// u, v, uv, z mutually orthogonal.
double cayley_triple_residual(const HurwitzAlgebra& o, const CayleyTriple& t);

// phi(1)=1, phi(i)=u, phi(j)=v, phi(l)=z, remaining images generated
// multiplicatively. Throws if the triple invariants fail at tol.
Mat automorphism_from_cayley_triple(const HurwitzAlgebra& o,
                                    const CayleyTriple& t);

// Quaternion analogue: phi from an orthonormal pair in Im H.
Mat automorphism_from_imaginary_pair(const HurwitzAlgebra& h, const Vec& u,
                                     const Vec& v);

struct InvInvSpec {
  std::string label;
  int dim = 0;
  Mat sigma, tau;
};

struct InvInvAlgebra {
  Algebra algebra;
  InvInvSpec spec;
};

// The ten canonical labels: R, C-id, C-conj, H-id, H-22, H-111, O-id, O-44,
// O-222, O-113.
const std::vector<std::string>& invinv_labels();

// B_{sigma,tau} with x o y = sigma(x) tau(y) for the given class label.
InvInvAlgebra invinv_algebra(const std::string& label);

// Residual of sigma(x)tau(x) = -|x|^2 (c - s y) minimized over unit y in
// S_{sigma,tau}, combined with the residual of (c - s y) being idempotent in
// B_{sigma,tau}; x must lie in N_{sigma,tau}.
double squareidp_check(const InvInvSpec& spec, const Vec& x);

// A(Im H, [.,.]/2): dim-preserving reconstruction of H from its imaginary
// part with the vector product; constants equal H's exactly.
Algebra vector_product_algebra(const HurwitzAlgebra& h);

struct PolarDecomposition {
  Mat gamma;  // orthogonal
  Mat delta;  // symmetric positive-definite
};

// M = gamma * delta (right polar decomposition via SVD). Throws
// singular_error for singular M at tol.
PolarDecomposition polar_decompose(const Mat& m, double tol = kDefaultTol);

}  // namespace divalg
