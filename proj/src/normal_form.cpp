#include "divalg/normal_form.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>

#include "divalg/hurwitz.hpp"

namespace divalg {

namespace {

constexpr double kBranchEps = 1e-9;  // zero-tests steering the case tree
constexpr double kSnapEps = 1e-12;   // coordinates snapped to exact 0/1

const Mat3 kD1 = Eigen::Vector3d(1, -1, -1).asDiagonal();   // fixes axis 0
const Mat3 kD2 = Eigen::Vector3d(-1, 1, -1).asDiagonal();   // fixes axis 1
const Mat3 kD3 = Eigen::Vector3d(-1, -1, 1).asDiagonal();   // fixes axis 2

// The +1 axis of a Klein element.
int fixed_axis(const Mat3& d) { return d(0, 0) > 0 ? 0 : d(1, 1) > 0 ? 1 : 2; }

// Rotation in coordinate plane (p,q) sending the (p,q)-part of v to
// (sign*r, 0) with r >= 0.
Mat3 plane_align(int p, int q, const Vec3& v, double sign = +1.0) {
  const double x = sign * v[p], y = sign * v[q];
  const double r = std::hypot(x, y);
  Mat3 rot = Mat3::Identity();
  if (r < 1e-300) return rot;
  const double co = x / r, si = y / r;
  rot(p, p) = co;
  rot(p, q) = si;
  rot(q, p) = -si;
  rot(q, q) = co;
  return rot;
}

bool near_zero(double x, double scale = 1.0) {
  return std::abs(x) <= kBranchEps * std::max(1.0, scale);
}

// Reduction state. Group elements applied compose into the witness g;
// projective components with an established pivot are re-scaled after every
// application, so sign flips act on the normalized representatives.
struct Reducer {
  Mat3 g = Mat3::Identity();
  std::optional<Vec3> u;
  Vec3 c = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  bool c_projective = false;
  int u_pivot = -1;
  int c_pivot = -1;

  void apply(const Mat3& r) {
    g = r * g;
    if (u) *u = r * (*u);
    c = r * c;
    b = r * b;
    if (u && u_pivot >= 0) *u /= (*u)[u_pivot];
    if (c_projective && c_pivot >= 0) c /= c[c_pivot];
  }

  void set_u_pivot(int p) {
    *u /= (*u)[p];
    u_pivot = p;
  }
  void set_c_pivot(int p) {
    c /= c[p];
    c_pivot = p;
  }
};

// Residual {I, d} used up on b: canonical b[f1] > 0, else b[f1] = 0 and
// b[f2] >= 0, where (f1, f2) are the coordinates d flips, ascending.
void two_element_canon_b(Reducer& r, const Mat3& d) {
  const int t = fixed_axis(d);
  const int f1 = t == 0 ? 1 : 0;
  const int f2 = t == 2 ? 1 : 2;
  const double s = r.b.cwiseAbs().maxCoeff();
  if (!near_zero(r.b[f1], s)) {
    if (r.b[f1] < 0) r.apply(d);
  } else if (r.b[f2] < 0) {
    r.apply(d);
  }
}

// Affine vector into P2 = [P;P;R] u [P;0;N] u [0;N;N] under the full Klein
// group.
void klein_p2_b(Reducer& r) {
  const double s = r.b.cwiseAbs().maxCoeff();
  const double b0 = r.b[0], b1 = r.b[1], b2 = r.b[2];
  if (!near_zero(b0, s)) {
    if (!near_zero(b1, s)) {
      if (b0 < 0 && b1 < 0) r.apply(kD3);
      else if (b0 < 0) r.apply(kD2);
      else if (b1 < 0) r.apply(kD1);
    } else {
      if (b0 < 0) r.apply(b2 >= 0 ? kD3 : kD2);
      else if (b2 < 0) r.apply(kD1);
    }
  } else {
    if (!near_zero(b1, s)) {
      if (b1 < 0) r.apply(b2 >= 0 ? kD3 : kD1);
      else if (b2 < 0) r.apply(kD2);
    } else if (b2 < 0) {
      r.apply(kD1);
    }
  }
}

// Projective c under a residual {I, d}, with the pivot preference order
// taken from the tabulated cross-section. On the representative scaled at
// pivot p, d flips both non-fixed-axis coordinates when p is d's fixed axis,
// and exactly the fixed-axis coordinate otherwise.
void residual_two_proj_cb(Reducer& r, const Mat3& d,
                          const std::array<int, 3>& order) {
  const int t = fixed_axis(d);
  const double cs = r.c.cwiseAbs().maxCoeff();
  int pivot = -1;
  for (int p : order) {
    if (!near_zero(r.c[p], cs)) {
      pivot = p;
      break;
    }
    r.c[p] = 0.0;
  }
  if (pivot < 0) throw error("normal form: projective component vanished");
  r.set_c_pivot(pivot);
  if (pivot == t) {
    const int f1 = t == 0 ? 1 : 0;
    const int f2 = t == 2 ? 1 : 2;
    if (!near_zero(r.c[f1])) {
      if (r.c[f1] < 0) r.apply(d);
      return;  // b free
    }
    r.c[f1] = 0.0;
    if (!near_zero(r.c[f2])) {
      if (r.c[f2] < 0) r.apply(d);
      return;
    }
    r.c[f2] = 0.0;
    two_element_canon_b(r, d);
    return;
  }
  if (!near_zero(r.c[t])) {
    if (r.c[t] < 0) r.apply(d);
    return;  // b free
  }
  r.c[t] = 0.0;
  two_element_canon_b(r, d);
}

// Affine c under a residual {I, d}: d flips c[f1], c[f2].
void residual_two_affine_cb(Reducer& r, const Mat3& d) {
  const int t = fixed_axis(d);
  const int f1 = t == 0 ? 1 : 0;
  const int f2 = t == 2 ? 1 : 2;
  const double cs = r.c.cwiseAbs().maxCoeff();
  if (!near_zero(r.c[f1], cs)) {
    if (r.c[f1] < 0) r.apply(d);
    return;
  }
  r.c[f1] = 0.0;
  if (!near_zero(r.c[f2], cs)) {
    if (r.c[f2] < 0) r.apply(d);
    return;
  }
  r.c[f2] = 0.0;
  two_element_canon_b(r, d);
}

// ---- (c, b) canonicalizations per stabilizer -------------------------------

// Full SO(3), projective c (B00 stratum 1).
void so3_proj_cb(Reducer& r) {
  r.apply(plane_align(1, 2, r.c));
  r.apply(plane_align(0, 1, r.c));
  r.c[1] = r.c[2] = 0.0;
  r.set_c_pivot(0);                 // c = (1,0,0)
  r.apply(plane_align(1, 2, r.b));  // b = (b1, s, 0), s >= 0
  if (r.b[0] < 0) r.apply(kD2);     // pi-rotation about e2 fixes [e1]
}

// Full SO(3), affine c (B01 stratum 1).
void so3_affine_cb(Reducer& r) {
  if (!near_zero(r.c.norm())) {
    r.apply(plane_align(1, 2, r.c));
    r.apply(plane_align(0, 1, r.c));  // c = (P,0,0)
    r.c[1] = r.c[2] = 0.0;
    r.apply(plane_align(1, 2, r.b));  // residual SO(2) about e1
  } else {
    r.c = Vec3::Zero();
    r.apply(plane_align(1, 2, r.b));
    r.apply(plane_align(0, 1, r.b));  // b = (N,0,0)
    r.b[1] = r.b[2] = 0.0;
  }
}

// G2 = <rot(0,1), D1> (stratum 2), projective c.
void g2_proj_cb(Reducer& r) {
  const double cs = r.c.cwiseAbs().maxCoeff();
  if (!near_zero(std::hypot(r.c[0], r.c[1]), cs)) {
    r.apply(plane_align(0, 1, r.c));  // c = (r, 0, c3), r > 0
    r.c[1] = 0.0;
    r.set_c_pivot(0);
    if (!near_zero(r.c[2])) {
      if (r.c[2] < 0) r.apply(kD1);  // c = (1,0,P)
      two_element_canon_b(r, kD2);
    } else {
      r.c[2] = 0.0;       // c = (1,0,0)
      klein_p2_b(r);      // residual Klein
    }
  } else {
    r.c[0] = r.c[1] = 0.0;
    r.set_c_pivot(2);                 // c = (0,0,1), fixed by all of G2
    r.apply(plane_align(0, 1, r.b));  // b = (s, 0, b3)
    if (r.b[2] < 0) r.apply(kD1);
  }
}

// G2, affine c.
void g2_affine_cb(Reducer& r) {
  const double cs = r.c.cwiseAbs().maxCoeff();
  if (!near_zero(std::hypot(r.c[0], r.c[1]), cs)) {
    r.apply(plane_align(0, 1, r.c));  // c = (P, 0, c3)
    r.c[1] = 0.0;
    if (!near_zero(r.c[2], cs)) {
      if (r.c[2] < 0) r.apply(kD1);  // c = (P,0,P); residual trivial
    } else {
      r.c[2] = 0.0;
      two_element_canon_b(r, kD1);  // c = (P,0,0)
    }
  } else if (!near_zero(r.c[2], cs)) {
    r.c[0] = r.c[1] = 0.0;
    if (r.c[2] < 0) r.apply(kD1);     // c = (0,0,P)
    r.apply(plane_align(0, 1, r.b));  // residual rot(0,1)
  } else {
    r.c = Vec3::Zero();
    r.apply(plane_align(0, 1, r.b));
    if (r.b[2] < 0) r.apply(kD1);  // b = (N,0,N)
  }
}

// G3 = <rot(1,2), D3> (stratum 3), projective c.
void g3_proj_cb(Reducer& r) {
  const double cs = r.c.cwiseAbs().maxCoeff();
  if (!near_zero(std::hypot(r.c[1], r.c[2]), cs)) {
    if (!near_zero(r.c[0], cs)) {
      r.apply(plane_align(1, 2, r.c, r.c[0] > 0 ? +1.0 : -1.0));
      r.c[2] = 0.0;
      r.set_c_pivot(0);  // c = (1,P,0)
      two_element_canon_b(r, kD3);
    } else {
      r.c[0] = 0.0;
      r.apply(plane_align(1, 2, r.c));
      r.c[2] = 0.0;
      r.set_c_pivot(1);  // c = (0,1,0)
      klein_p2_b(r);     // residual Klein
    }
  } else {
    r.c[1] = r.c[2] = 0.0;
    r.set_c_pivot(0);                 // c = (1,0,0), fixed by all of G3
    r.apply(plane_align(1, 2, r.b));  // b = (b1, s, 0)
    if (r.b[0] < 0) r.apply(kD2);     // rot(pi about e1) * D3
  }
}

// G3, affine c.
void g3_affine_cb(Reducer& r) {
  const double cs = r.c.cwiseAbs().maxCoeff();
  if (!near_zero(std::hypot(r.c[1], r.c[2]), cs)) {
    r.apply(plane_align(1, 2, r.c));  // c = (c1, P, 0)
    r.c[2] = 0.0;
    if (!near_zero(r.c[0], cs)) {
      if (r.c[0] < 0) r.apply(kD2);  // c = (P,P,0); residual trivial
    } else {
      r.c[0] = 0.0;
      two_element_canon_b(r, kD2);  // c = (0,P,0)
    }
  } else if (!near_zero(r.c[0], cs)) {
    r.c[1] = r.c[2] = 0.0;
    if (r.c[0] < 0) r.apply(kD3);     // c = (P,0,0)
    r.apply(plane_align(1, 2, r.b));  // residual rot(1,2)
  } else {
    r.c = Vec3::Zero();
    r.apply(plane_align(1, 2, r.b));
    if (r.b[0] < 0) r.apply(kD2);  // b = (N,N,0)
  }
}

// Klein group (stratum 4), projective c.
void klein_proj_cb(Reducer& r) {
  const double cs = r.c.cwiseAbs().maxCoeff();
  const bool z0 = near_zero(r.c[0], cs), z1 = near_zero(r.c[1], cs),
             z2 = near_zero(r.c[2], cs);
  if (!z0 && !z1 && !z2) {
    r.set_c_pivot(0);
    if (r.c[1] < 0 && r.c[2] < 0) r.apply(kD1);
    else if (r.c[1] < 0) r.apply(kD2);
    else if (r.c[2] < 0) r.apply(kD3);
    return;  // c = (1,P,P); residual trivial
  }
  if (z0 && !z1 && !z2) {
    r.c[0] = 0.0;
    r.set_c_pivot(1);
    if (r.c[2] < 0) r.apply(kD2);  // c = (0,1,P)
    two_element_canon_b(r, kD1);
    return;
  }
  if (!z0 && z1 && !z2) {
    r.c[1] = 0.0;
    r.set_c_pivot(0);
    if (r.c[2] < 0) r.apply(kD1);  // c = (1,0,P)
    two_element_canon_b(r, kD2);
    return;
  }
  if (!z0 && !z1 && z2) {
    r.c[2] = 0.0;
    r.set_c_pivot(0);
    if (r.c[1] < 0) r.apply(kD1);  // c = (1,P,0)
    two_element_canon_b(r, kD3);
    return;
  }
  // Coordinate axis: fixed by the full group.
  for (int i = 0; i < 3; ++i)
    if (near_zero(r.c[i], cs)) r.c[i] = 0.0;
  for (int i = 0; i < 3; ++i)
    if (r.c[i] != 0.0) {
      r.set_c_pivot(i);
      break;
    }
  klein_p2_b(r);
}

// Klein group, affine c.
void klein_affine_cb(Reducer& r) {
  const double cs = r.c.cwiseAbs().maxCoeff();
  const bool nz0 = !near_zero(r.c[0], cs), nz1 = !near_zero(r.c[1], cs),
             nz2 = !near_zero(r.c[2], cs);
  if (!nz0) r.c[0] = 0.0;
  if (!nz1) r.c[1] = 0.0;
  if (!nz2) r.c[2] = 0.0;
  const int count = int(nz0) + int(nz1) + int(nz2);
  if (count >= 2) {
    int p = -1, q = -1;
    for (int i = 0; i < 3 && q < 0; ++i) {
      if (r.c[i] == 0.0) continue;
      if (p < 0) p = i;
      else q = i;
    }
    auto pair_flip = [](int a, int bb) -> const Mat3& {
      if (a == 0 && bb == 1) return kD3;
      if (a == 0 && bb == 2) return kD2;
      return kD1;
    };
    const int other = 3 - p - q;
    if (r.c[p] < 0 && r.c[q] < 0) r.apply(pair_flip(p, q));
    else if (r.c[p] < 0) r.apply(pair_flip(std::min(p, other), std::max(p, other)));
    else if (r.c[q] < 0) r.apply(pair_flip(std::min(q, other), std::max(q, other)));
    return;  // first two nonzero coords positive; residual trivial
  }
  if (count == 1) {
    const int p = nz0 ? 0 : nz1 ? 1 : 2;
    const Mat3& fix = p == 0 ? kD1 : p == 1 ? kD2 : kD3;   // fixes c
    const Mat3& move = p == 0 ? kD2 : kD1;                 // flips c[p]
    if (r.c[p] < 0) r.apply(move);
    two_element_canon_b(r, fix);
    return;
  }
  klein_p2_b(r);  // c = 0
}

// ---- u-handling for families B10/B11 ---------------------------------------

void reduce_b1x(Reducer& r, int stratum) {
  Vec3& u = *r.u;
  const bool c_proj = r.c_projective;
  switch (stratum) {
    case 1: {
      // Full SO(3): [u] -> e1; residual is the stabilizer of [e1].
      r.apply(plane_align(1, 2, u));
      r.apply(plane_align(0, 1, u));
      u[1] = u[2] = 0.0;
      r.set_u_pivot(0);
      if (c_proj) {
        r.apply(plane_align(1, 2, r.c));  // c = (c1, rho, 0)
        const double cs = r.c.cwiseAbs().maxCoeff();
        if (!near_zero(r.c[1], cs)) {
          r.c[2] = 0.0;
          r.set_c_pivot(1);
          if (!near_zero(r.c[0])) {
            if (r.c[0] < 0) r.apply(kD2);  // c = (P,1,0)
            two_element_canon_b(r, kD3);   // residual {I, D3}
          } else {
            r.c[0] = 0.0;   // c = (0,1,0)
            klein_p2_b(r);  // residual Klein
          }
        } else {
          r.c[1] = r.c[2] = 0.0;
          r.set_c_pivot(0);                 // c = (1,0,0) = [u]
          r.apply(plane_align(1, 2, r.b));  // full stabilizer of [e1]
          if (r.b[0] < 0) r.apply(kD2);
        }
      } else {
        r.apply(plane_align(1, 2, r.c));  // c = (c1, rho, 0)
        const double cs = r.c.cwiseAbs().maxCoeff();
        if (!near_zero(r.c[1], cs)) {
          r.c[2] = 0.0;
          if (!near_zero(r.c[0], cs)) {
            if (r.c[0] < 0) r.apply(kD2);  // c = (P,P,0); residual trivial
          } else {
            r.c[0] = 0.0;  // c = (0,P,0); residual {I, D2}
            two_element_canon_b(r, kD2);
          }
        } else {
          r.c[1] = r.c[2] = 0.0;
          if (!near_zero(r.c[0], cs)) {
            if (r.c[0] < 0) r.apply(kD2);     // c = (P,0,0)
            r.apply(plane_align(1, 2, r.b));  // residual rot(1,2)
          } else {
            r.c = Vec3::Zero();
            r.apply(plane_align(1, 2, r.b));
            if (r.b[0] < 0) r.apply(kD2);  // b = (N,N,0)
          }
        }
      }
      return;
    }
    case 2: {
      const double us = u.cwiseAbs().maxCoeff();
      if (!near_zero(std::hypot(u[0], u[1]), us)) {
        r.apply(plane_align(0, 1, u));  // u = (r, 0, u3), r > 0
        u[1] = 0.0;
        r.set_u_pivot(0);
        if (!near_zero(u[2])) {
          if (u[2] < 0) r.apply(kD1);  // u = (1,0,P); residual {I, D2}
          if (c_proj) residual_two_proj_cb(r, kD2, {1, 0, 2});
          else residual_two_affine_cb(r, kD2);
        } else {
          u[2] = 0.0;  // u = (1,0,0); residual Klein
          if (c_proj) klein_proj_cb(r);
          else klein_affine_cb(r);
        }
      } else {
        u[0] = u[1] = 0.0;
        r.set_u_pivot(2);  // u = (0,0,1); residual all of G2
        if (c_proj) g2_proj_cb(r);
        else g2_affine_cb(r);
      }
      return;
    }
    case 3: {
      const double us = u.cwiseAbs().maxCoeff();
      if (!near_zero(std::hypot(u[1], u[2]), us)) {
        if (!near_zero(u[0], us)) {
          r.apply(plane_align(1, 2, u, u[0] > 0 ? +1.0 : -1.0));
          u[2] = 0.0;
          r.set_u_pivot(0);  // u = (1,P,0); residual {I, D3}
          if (c_proj) residual_two_proj_cb(r, kD3, {1, 2, 0});
          else residual_two_affine_cb(r, kD3);
        } else {
          u[0] = 0.0;
          r.apply(plane_align(1, 2, u));
          u[2] = 0.0;
          r.set_u_pivot(1);  // u = (0,1,0); residual Klein
          if (c_proj) klein_proj_cb(r);
          else klein_affine_cb(r);
        }
      } else {
        u[1] = u[2] = 0.0;
        r.set_u_pivot(0);  // u = (1,0,0); residual all of G3
        if (c_proj) g3_proj_cb(r);
        else g3_affine_cb(r);
      }
      return;
    }
    default: {  // stratum 4: Klein
      const double us = u.cwiseAbs().maxCoeff();
      const bool z0 = near_zero(u[0], us), z1 = near_zero(u[1], us),
                 z2 = near_zero(u[2], us);
      if (z0) u[0] = 0.0;
      if (z1) u[1] = 0.0;
      if (z2) u[2] = 0.0;
      const int count = int(!z0) + int(!z1) + int(!z2);
      if (count == 3) {
        r.set_u_pivot(0);
        if (u[1] < 0 && u[2] < 0) r.apply(kD1);
        else if (u[1] < 0) r.apply(kD2);
        else if (u[2] < 0) r.apply(kD3);
        // u = (1,P,P); residual trivial.
        if (c_proj) {
          const double cns = r.c.cwiseAbs().maxCoeff();
          const int p = !near_zero(r.c[0], cns) ? 0
                        : !near_zero(r.c[1], cns) ? 1
                                                  : 2;
          for (int i = 0; i < p; ++i) r.c[i] = 0.0;
          r.set_c_pivot(p);  // P1 normal position
        }
        return;
      }
      if (count == 2) {
        if (z0) {
          r.set_u_pivot(1);
          if (u[2] < 0) r.apply(kD2);  // u = (0,1,P); residual {I, D1}
          if (c_proj) residual_two_proj_cb(r, kD1, {0, 1, 2});
          else residual_two_affine_cb(r, kD1);
        } else if (z1) {
          r.set_u_pivot(0);
          if (u[2] < 0) r.apply(kD1);  // u = (1,0,P); residual {I, D2}
          if (c_proj) residual_two_proj_cb(r, kD2, {1, 0, 2});
          else residual_two_affine_cb(r, kD2);
        } else {
          r.set_u_pivot(0);
          if (u[1] < 0) r.apply(kD1);  // u = (1,P,0); residual {I, D3}
          if (c_proj) residual_two_proj_cb(r, kD3, {2, 0, 1});
          else residual_two_affine_cb(r, kD3);
        }
        return;
      }
      // u on a coordinate axis: full Klein residual.
      for (int i = 0; i < 3; ++i)
        if (u[i] != 0.0) {
          r.set_u_pivot(i);
          break;
        }
      if (c_proj) klein_proj_cb(r);
      else klein_affine_cb(r);
      return;
    }
  }
}

void snap_vec(Vec3& v) {
  const double s = std::max(1.0, v.cwiseAbs().maxCoeff());
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) <= kSnapEps * s) v[i] = 0.0;
    else if (std::abs(v[i] - 1.0) <= kSnapEps * s) v[i] = 1.0;
  }
}

}  // namespace

Family family_from_string(const std::string& s) {
  if (s == "B00") return Family::b00;
  if (s == "B01") return Family::b01;
  if (s == "B10") return Family::b10;
  if (s == "B11") return Family::b11;
  throw error("unknown family: " + s + " (expected B00/B01/B10/B11)");
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::b00: return "B00";
    case Family::b01: return "B01";
    case Family::b10: return "B10";
    case Family::b11: return "B11";
  }
  throw error("unreachable family");
}

SymmetricDiagonalization diagonalize_symmetric(const Mat3& b,
                                               double degenerate_tol) {
  if ((b - b.transpose()).cwiseAbs().maxCoeff() >
      kDefaultTol * std::max(1.0, b.cwiseAbs().maxCoeff()))
    throw error("diagonalize_symmetric: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat3> eig(Mat3(0.5 * (b + b.transpose())));
  SymmetricDiagonalization out;
  out.d = eig.eigenvalues();
  out.rotation = eig.eigenvectors();
  if (out.rotation.determinant() < 0) out.rotation.col(2) = -out.rotation.col(2);
  const double scale = std::max(1.0, out.d.cwiseAbs().maxCoeff());
  const double g01 = (out.d[1] - out.d[0]) / scale;
  const double g12 = (out.d[2] - out.d[1]) / scale;
  const bool eq01 = g01 <= degenerate_tol;
  const bool eq12 = g12 <= degenerate_tol;
  if (eq01 && eq12) {
    out.stratum = 1;
    out.min_gap = 0.0;
  } else if (eq01) {
    out.stratum = 2;
    out.min_gap = g12;
  } else if (eq12) {
    out.stratum = 3;
    out.min_gap = g01;
  } else {
    out.stratum = 4;
    out.min_gap = std::min(g01, g12);
  }
  return out;
}

NormalFormRecord reduce(const ClassDatum& datum) {
  const bool has_u = datum.family == Family::b10 || datum.family == Family::b11;
  if (has_u != datum.u.has_value())
    throw error("normal form: u must be present exactly for families B1j");
  const bool c_projective =
      datum.family == Family::b00 || datum.family == Family::b10;
  if (c_projective && datum.c.norm() == 0.0)
    throw error("normal form: projective c must be nonzero");
  if (has_u && datum.u->norm() == 0.0)
    throw error("normal form: projective u must be nonzero");

  const SymmetricDiagonalization diag = diagonalize_symmetric(datum.bmat);

  Reducer r;
  r.u = datum.u;
  r.c = datum.c;
  r.b = datum.b;
  r.c_projective = c_projective;
  r.apply(diag.rotation.transpose());

  if (has_u) {
    reduce_b1x(r, diag.stratum);
  } else {
    switch (diag.stratum) {
      case 1: c_projective ? so3_proj_cb(r) : so3_affine_cb(r); break;
      case 2: c_projective ? g2_proj_cb(r) : g2_affine_cb(r); break;
      case 3: c_projective ? g3_proj_cb(r) : g3_affine_cb(r); break;
      default: c_projective ? klein_proj_cb(r) : klein_affine_cb(r);
    }
  }

  NormalFormRecord record;
  record.stratum = diag.stratum;
  record.d = diag.d;
  record.witness_rotation = r.g;
  record.near_degenerate = diag.stratum != 1 && diag.min_gap < 1e-3;
  record.canonical.family = datum.family;
  record.canonical.u = r.u;
  record.canonical.c = r.c;
  record.canonical.b = r.b;
  record.canonical.bmat = diag.d.asDiagonal();
  record.canonical.beta = datum.beta;
  if (record.canonical.u) snap_vec(*record.canonical.u);
  snap_vec(record.canonical.c);
  snap_vec(record.canonical.b);
  return record;
}

Algebra build_division_algebra(const DivisionAlgebraDatum& datum) {
  if (datum.a.size() != 4 || datum.u.size() != 4 || datum.delta.rows() != 4 ||
      datum.delta.cols() != 4)
    throw dimension_error("build_division_algebra: quaternion data expected");
  if (datum.sign != 1 && datum.sign != -1)
    throw error("build_division_algebra: sign must be +1 or -1");
  const HurwitzAlgebra h = hurwitz(4);
  const Algebra& q = h.algebra();
  if (std::abs(datum.delta.determinant() - 1.0) > 1e-6)
    throw error("build_division_algebra: delta must have determinant 1");
  if ((datum.delta - datum.delta.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw error("build_division_algebra: delta must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> eig(datum.delta);
  if (eig.eigenvalues().minCoeff() <= 0)
    throw error("build_division_algebra: delta must be positive definite");
  const Vec u2 = q.multiply(datum.u, datum.u);
  if (u2.tail(3).norm() > kDefaultTol * std::max(1.0, u2.norm()))
    throw error("build_division_algebra: u^2 must lie in R1");

  const Mat alpha =
      datum.sign == 1
          ? Mat(q.left_mul(datum.a) * datum.delta)
          : Mat(q.right_mul(datum.a) * datum.delta * h.conjugation());
  return q.isotope(alpha, q.right_mul(datum.u));
}

}  // namespace divalg
