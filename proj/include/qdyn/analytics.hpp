#pragma once

#include <cmath>

#include "qdyn/types.hpp"

namespace qdyn {

/// Parameters of the closed-form solutions: the one-parameter family
/// (a, 1, 1, 1-a)/3 with |z| = 1, equal rates on both qubits, and time
/// measured in units of the common rate (gamma*t or Gamma*t).
struct AnalyticParams {
  double a = 0.0;           // in [0, 1]
  double chi = 0.0;         // initial coherence phase
  double v_over_rate = 0.0; // v/gamma or v/Gamma
  Environment model = Environment::Decay;

  void require_valid() const {
    if (a < 0.0 || a > 1.0) {
      throw InvalidStateError("AnalyticParams: a must lie in [0, 1]");
    }
  }
};

/// Signed concurrence under spontaneous decay, time in units of 1/gamma.
/// The coherence magnitude carries the 2v oscillation; the population term
/// grows with w = sqrt(1 - e^{-t}).
inline double c_tilde_decay(const AnalyticParams& p, double t) {
  p.require_valid();
  if (p.model != Environment::Decay) {
    throw ModelMismatchError("c_tilde_decay: model is not Decay");
  }
  const double e = std::exp(-t);
  const double w2 = 1.0 - e;
  const double cchi = std::cos(p.chi);
  const double schi = std::sin(p.chi);
  const double cv = std::cos(2.0 * p.v_over_rate * t);
  const double coherence = std::sqrt(cchi * cchi + schi * schi * cv * cv);
  const double radicand =
      p.a * (1.0 - p.a + 2.0 * w2 + w2 * w2 * p.a);
  return (2.0 / 3.0) * e * (coherence - std::sqrt(std::max(radicand, 0.0)));
}

namespace detail {

// cos(w t) - sin(w t)/w with w^2 = mu, continued through mu <= 0: for
// negative mu the trigonometric pair becomes hyperbolic, and at mu = 0 the
// limit is 1 - t. Continuous in mu, which the test suite checks at the
// transition.
inline double damped_oscillation_factor(double mu, double t) {
  constexpr double kBranchTol = 1e-12;
  if (std::abs(mu) < kBranchTol) return 1.0 - t;
  if (mu > 0.0) {
    const double w = std::sqrt(mu);
    return std::cos(w * t) - std::sin(w * t) / w;
  }
  const double w = std::sqrt(-mu);
  return std::cosh(w * t) - std::sinh(w * t) / w;
}

}  // namespace detail

/// Signed concurrence under pure dephasing, tau = Gamma t. Written with
/// Omega' = sqrt((2v/Gamma)^2 - 1); below the exceptional point 2v = Gamma
/// the oscillation factor continues to its hyperbolic counterpart, and the
/// v = 0 limit reduces to (2/3)[e^{-2 tau} - sqrt(a(1-a))].
inline double c_tilde_dephasing(const AnalyticParams& p, double tau) {
  p.require_valid();
  if (p.model != Environment::Dephasing) {
    throw ModelMismatchError("c_tilde_dephasing: model is not Dephasing");
  }
  const double two_v = 2.0 * p.v_over_rate;
  const double mu = two_v * two_v - 1.0;
  const double f = detail::damped_oscillation_factor(mu, tau);
  const double e = std::exp(-tau);
  const double cchi = std::cos(p.chi);
  const double schi = std::sin(p.chi);
  const double inner = e * e * cchi * cchi + schi * schi * f * f;
  return (2.0 / 3.0) *
         (e * std::sqrt(inner) - std::sqrt(std::max(p.a * (1.0 - p.a), 0.0)));
}

inline double c_tilde_closed_form(const AnalyticParams& p, double t) {
  return p.model == Environment::Decay ? c_tilde_decay(p, t)
                                       : c_tilde_dephasing(p, t);
}

inline double concurrence_closed_form(const AnalyticParams& p, double t) {
  return std::max(0.0, c_tilde_closed_form(p, t));
}

/// Disentanglement condition under decay: true exactly when the signed
/// concurrence is negative.
inline bool dark_condition_decay(const AnalyticParams& p, double t) {
  p.require_valid();
  if (p.model != Environment::Decay) {
    throw ModelMismatchError("dark_condition_decay: model is not Decay");
  }
  const double w2 = 1.0 - std::exp(-t);
  const double schi = std::sin(p.chi);
  const double sv = std::sin(2.0 * p.v_over_rate * t);
  const double lhs = p.a * (1.0 - p.a + 2.0 * w2 + w2 * w2 * p.a);
  const double rhs = 1.0 - schi * schi * sv * sv;
  return lhs > rhs;
}

enum class EsdVerdict { EsdOccurs, NoEsd, Boundary };

/// Long-time limit of the decay solution at v = 0: w -> 1 turns the
/// population radicand into 3a, so sudden death happens in finite time
/// exactly when 3a > 1.
inline EsdVerdict esd_threshold_decay(const AnalyticParams& p) {
  p.require_valid();
  if (p.model != Environment::Decay) {
    throw ModelMismatchError("esd_threshold_decay: model is not Decay");
  }
  if (p.v_over_rate != 0.0) {
    throw ModelMismatchError("esd_threshold_decay: defined for v = 0 only");
  }
  constexpr double kBoundaryTol = 1e-12;
  const double margin = 3.0 * p.a - 1.0;
  if (std::abs(margin) <= kBoundaryTol) return EsdVerdict::Boundary;
  return margin > 0.0 ? EsdVerdict::EsdOccurs : EsdVerdict::NoEsd;
}

/// Zero crossing of the v = 0 dephasing solution, tau = -1/2 ln sqrt(a(1-a)).
inline double dephasing_death_time_v0(double a) {
  if (a <= 0.0 || a >= 1.0) {
    throw InvalidStateError("dephasing_death_time_v0: need a in (0, 1)");
  }
  return -0.5 * std::log(std::sqrt(a * (1.0 - a)));
}

}  // namespace qdyn
