#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "qdyn/operators.hpp"
#include "qdyn/types.hpp"

namespace qdyn {

/// Wootters concurrence together with the signed pre-max quantity and the
/// four sorted square-root eigenvalues it is built from.
struct ConcurrenceValue {
  double c = 0.0;        // max(0, c_tilde), in [0, 1]
  double c_tilde = 0.0;  // signed: lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]
  std::array<double, 4> lambdas{};  // descending sqrt-eigenvalues of rho*rho_tilde
};

/// Spin-flipped matrix (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y).
inline DensityMatrix spin_flip(const DensityMatrix& rho) {
  const Mat4& f = ops().sigma_yy;
  return f * rho.conjugate() * f;
}

namespace detail {

// Principal square root of a Hermitian PSD matrix via eigendecomposition.
// Eigenvalues in [-1e-10, 0) are treated as exact zeros; anything below
// -tol_psd is a real breakdown, not roundoff.
inline Mat4 sqrt_psd(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(m);
  Eigen::Vector4d ev = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (ev(i) < -tol::kPsd) {
      throw NumericalBreakdownError("sqrt of matrix with eigenvalue " +
                                    std::to_string(ev(i)));
    }
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

inline ConcurrenceValue from_sqrt_lambdas(std::array<double, 4> l) {
  std::sort(l.begin(), l.end(), std::greater<double>());
  ConcurrenceValue out;
  out.lambdas = l;
  out.c_tilde = l[0] - l[1] - l[2] - l[3];
  out.c = std::min(std::max(out.c_tilde, 0.0), 1.0);
  return out;
}

}  // namespace detail

/// Concurrence of an arbitrary two-qubit state. Instead of the non-Hermitian
/// product rho*rho_tilde, the spectrum is taken from the Hermitian matrix
/// M = sqrt(rho) rho_tilde sqrt(rho), which shares its eigenvalues and is
/// PSD by construction, so the square roots stay real in floating point.
inline ConcurrenceValue concurrence_general(const DensityMatrix& rho) {
  const Mat4 s = detail::sqrt_psd(rho);
  const Mat4 m = s * spin_flip(rho) * s;
  Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);

  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) {
    double ev = es.eigenvalues()(i);
    if (ev < -1e-8) {
      throw NumericalBreakdownError("concurrence eigenvalue " +
                                    std::to_string(ev) + " below -1e-8");
    }
    l[static_cast<std::size_t>(i)] = std::sqrt(std::max(ev, 0.0));
  }
  return detail::from_sqrt_lambdas(l);
}

/// X-state fast path: c_tilde = 2(|rho23| - sqrt(rho11 rho44)). The sqrt
/// eigenvalues are filled in from the closed-form X-state spectrum.
inline ConcurrenceValue concurrence_x(const XState& x) {
  const double r11 = x.rho11();
  const double r22 = x.rho22();
  const double r33 = x.rho33();
  const double r44 = x.rho44();
  const double r = std::abs(x.rho23());
  const double p = std::sqrt(std::max(r11 * r44, 0.0));
  const double q = std::sqrt(std::max(r22 * r33, 0.0));

  ConcurrenceValue out =
      detail::from_sqrt_lambdas({p, p, q + r, std::abs(q - r)});
  // The sorted-sum form reduces to this for any PSD X state; keep the
  // direct expression as the authoritative value.
  out.c_tilde = 2.0 * (r - p);
  out.c = std::min(std::max(out.c_tilde, 0.0), 1.0);
  return out;
}

}  // namespace qdyn
