#pragma once

#include "qdyn/types.hpp"

namespace qdyn {

// Single-qubit operators in the {|e>, |g>} basis. S_z has eigenvalues +1/2
// on |e> and -1/2 on |g>.
inline Mat2 s_z_1q() {
  Mat2 m = Mat2::Zero();
  m(0, 0) = 0.5;
  m(1, 1) = -0.5;
  return m;
}

inline Mat2 s_plus_1q() {
  Mat2 m = Mat2::Zero();
  m(0, 1) = 1.0;
  return m;
}

inline Mat2 s_minus_1q() {
  Mat2 m = Mat2::Zero();
  m(1, 0) = 1.0;
  return m;
}

inline Mat2 sigma_y_1q() {
  Mat2 m = Mat2::Zero();
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// The embedded two-qubit operators, built once. Qubit A is the left
/// Kronecker factor, matching the basis ordering in types.hpp.
struct TwoQubitOps {
  Mat4 sz_a, sz_b;
  Mat4 sp_a, sp_b;
  Mat4 sm_a, sm_b;
  Mat4 sigma_yy;  // sigma_y (x) sigma_y, the spin-flip conjugator

  TwoQubitOps() {
    const Mat2 id = Mat2::Identity();
    sz_a = kron2(s_z_1q(), id);
    sz_b = kron2(id, s_z_1q());
    sp_a = kron2(s_plus_1q(), id);
    sp_b = kron2(id, s_plus_1q());
    sm_a = kron2(s_minus_1q(), id);
    sm_b = kron2(id, s_minus_1q());
    sigma_yy = kron2(sigma_y_1q(), sigma_y_1q());
  }
};

inline const TwoQubitOps& ops() {
  static const TwoQubitOps instance;
  return instance;
}

// Column-stacking vectorization: vec(rho)[i + 4j] = rho(i, j).
inline Vec16 vec(const Mat4& m) {
  Vec16 out;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) out(i + 4 * j) = m(i, j);
  return out;
}

inline Mat4 unvec(const Vec16& v) {
  Mat4 out;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) out(i, j) = v(i + 4 * j);
  return out;
}

// vec(A rho) = (I (x) A) vec(rho)
inline Mat16 super_left(const Mat4& a) {
  Mat16 out = Mat16::Zero();
  for (int k = 0; k < 4; ++k) out.block<4, 4>(4 * k, 4 * k) = a;
  return out;
}

// vec(rho A) = (A^T (x) I) vec(rho)
inline Mat16 super_right(const Mat4& a) {
  Mat16 out = Mat16::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.block<4, 4>(4 * i, 4 * j) = a(j, i) * Mat4::Identity();
  return out;
}

}  // namespace qdyn
