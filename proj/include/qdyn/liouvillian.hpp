#pragma once

#include "qdyn/operators.hpp"
#include "qdyn/types.hpp"

namespace qdyn {

/// H = omega0 (S_z^A + S_z^B) + v (S_+^A S_-^B + S_+^B S_-^A), hbar = 1.
/// The flip-flop term only connects |eg> and |ge|, so the only off-diagonal
/// entries are H(1,2) = H(2,1) = v.
inline Mat4 hamiltonian(const ModelParams& p) {
  const TwoQubitOps& o = ops();
  return p.omega0 * (o.sz_a + o.sz_b) +
         p.v * (o.sp_a * o.sm_b + o.sp_b * o.sm_a);
}

namespace detail {

inline Mat4 commutator_term(const Mat4& h, const Mat4& rho) {
  return Complex(0.0, -1.0) * (h * rho - rho * h);
}

// -(g/2) (S+S- rho - 2 S- rho S+ + rho S+S-), the amplitude-damping channel
// for one qubit.
inline Mat4 decay_dissipator(double g, const Mat4& sp, const Mat4& sm,
                             const Mat4& rho) {
  const Mat4 n = sp * sm;
  return -(g / 2.0) * (n * rho - 2.0 * (sm * rho * sp) + rho * n);
}

// -G (Sz Sz rho - 2 Sz rho Sz + rho Sz Sz). With S_z eigenvalues +-1/2 this
// leaves every population untouched and damps the |eg>,|ge> coherence at
// rate G_A + G_B, which is the calibration the closed forms rely on.
inline Mat4 dephasing_dissipator(double g, const Mat4& sz, const Mat4& rho) {
  const Mat4 zz = sz * sz;
  return -g * (zz * rho - 2.0 * (sz * rho * sz) + rho * zz);
}

}  // namespace detail

/// Right-hand side of the spontaneous-decay master equation.
inline Mat4 decay_rhs(const DensityMatrix& rho, const ModelParams& p) {
  if (p.environment != Environment::Decay) {
    throw ModelMismatchError("decay_rhs called with a non-Decay model");
  }
  const TwoQubitOps& o = ops();
  Mat4 out = detail::commutator_term(hamiltonian(p), rho);
  out += detail::decay_dissipator(p.gamma_a, o.sp_a, o.sm_a, rho);
  out += detail::decay_dissipator(p.gamma_b, o.sp_b, o.sm_b, rho);
  return out;
}

/// Right-hand side of the pure-dephasing master equation.
inline Mat4 dephasing_rhs(const DensityMatrix& rho, const ModelParams& p) {
  if (p.environment != Environment::Dephasing) {
    throw ModelMismatchError("dephasing_rhs called with a non-Dephasing model");
  }
  const TwoQubitOps& o = ops();
  Mat4 out = detail::commutator_term(hamiltonian(p), rho);
  out += detail::dephasing_dissipator(p.dephasing_a, o.sz_a, rho);
  out += detail::dephasing_dissipator(p.dephasing_b, o.sz_b, rho);
  return out;
}

inline Mat4 master_rhs(const DensityMatrix& rho, const ModelParams& p) {
  return p.environment == Environment::Decay ? decay_rhs(rho, p)
                                             : dephasing_rhs(rho, p);
}

/// The master equation as a 16x16 matrix acting on column-stacked states:
/// L vec(rho) = vec(rhs(rho)).
struct Superoperator {
  Mat16 entries;
  Environment model;
};

inline Superoperator build_superoperator(const ModelParams& p) {
  p.require_valid();
  const TwoQubitOps& o = ops();
  const Mat4 h = hamiltonian(p);

  Mat16 l = Complex(0.0, -1.0) * (super_left(h) - super_right(h));

  if (p.environment == Environment::Decay) {
    const double gs[2] = {p.gamma_a, p.gamma_b};
    const Mat4* sps[2] = {&o.sp_a, &o.sp_b};
    const Mat4* sms[2] = {&o.sm_a, &o.sm_b};
    for (int q = 0; q < 2; ++q) {
      const Mat4 n = (*sps[q]) * (*sms[q]);
      l += (gs[q] / 2.0) * (2.0 * super_left(*sms[q]) * super_right(*sps[q]) -
                            super_left(n) - super_right(n));
    }
  } else {
    const double gs[2] = {p.dephasing_a, p.dephasing_b};
    const Mat4* szs[2] = {&o.sz_a, &o.sz_b};
    for (int q = 0; q < 2; ++q) {
      const Mat4 zz = (*szs[q]) * (*szs[q]);
      l += gs[q] * (2.0 * super_left(*szs[q]) * super_right(*szs[q]) -
                    super_left(zz) - super_right(zz));
    }
  }
  return Superoperator{l, p.environment};
}

}  // namespace qdyn
