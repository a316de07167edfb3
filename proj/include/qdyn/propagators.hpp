#pragma once

#include <cmath>
#include <vector>

#include "qdyn/expm.hpp"
#include "qdyn/liouvillian.hpp"
#include "qdyn/types.hpp"

namespace qdyn {

enum class Method { RK4Fixed, ExpOracle };

/// Step bound that resolves the fastest coherent frequency 2v. v is
/// measured against the active bath rate so the bound is stated in the
/// caller's time unit.
inline double dt_max(const ModelParams& p) {
  return 0.01 / std::max(1.0, std::abs(p.v) / p.rate_unit());
}

struct IntegratorConfig {
  double dt = 0.01;
  double t_end = 1.0;
  Method method = Method::RK4Fixed;
  int sample_every = 1;

  void require_valid(const ModelParams& p) const {
    if (!(dt > 0.0)) throw ConfigError("IntegratorConfig: dt must be > 0");
    if (t_end < 0.0) throw ConfigError("IntegratorConfig: t_end must be >= 0");
    if (sample_every < 1) {
      throw ConfigError("IntegratorConfig: sample_every must be >= 1");
    }
    const double bound = dt_max(p);
    if (dt > bound * (1.0 + 1e-12)) {
      throw StepTooLargeError("dt " + std::to_string(dt) +
                              " exceeds dt_max " + std::to_string(bound));
    }
  }
};

struct StateTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;

  const DensityMatrix& back() const { return states.back(); }
  std::size_t size() const { return times.size(); }
};

namespace detail {

// Number of fixed steps; the step is shrunk (never grown) so the last one
// lands exactly on t_end.
inline long step_count(double t_end, double dt) {
  if (t_end == 0.0) return 0;
  return std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
}

inline bool is_sample_step(long step, long n_steps, int sample_every) {
  return step % sample_every == 0 || step == n_steps;
}

inline void validate_sample(const DensityMatrix& rho, double t,
                            double tol_trace) {
  const double h = hermiticity_error(rho);
  if (h > tol::kHerm) {
    throw NumericalBreakdownError("hermiticity drift " + std::to_string(h) +
                                  " at t = " + std::to_string(t));
  }
  const double tr = trace_error(rho);
  if (tr > tol_trace) {
    throw NumericalBreakdownError("trace drift " + std::to_string(tr) +
                                  " at t = " + std::to_string(t));
  }
  const double e = min_eigenvalue(rho);
  if (e < -tol::kPsd) {
    throw PositivityViolationError("eigenvalue " + std::to_string(e) +
                                   " at t = " + std::to_string(t));
  }
}

}  // namespace detail

/// Classical fixed-step 4th-order Runge-Kutta on the matrix-valued master
/// equation. Every stored sample is re-validated against the state
/// invariants; violations throw instead of being repaired.
inline StateTrajectory integrate_rk(const DensityMatrix& rho0,
                                    const ModelParams& p,
                                    const IntegratorConfig& cfg) {
  p.require_valid();
  cfg.require_valid(p);
  require_valid_state(rho0);

  const long n = detail::step_count(cfg.t_end, cfg.dt);
  const double h = n > 0 ? cfg.t_end / static_cast<double>(n) : 0.0;

  StateTrajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n / cfg.sample_every + 2));
  traj.states.reserve(traj.times.capacity());

  DensityMatrix rho = rho0;
  detail::validate_sample(rho, 0.0, tol::kTrace);
  traj.times.push_back(0.0);
  traj.states.push_back(rho);

  for (long step = 1; step <= n; ++step) {
    const Mat4 k1 = master_rhs(rho, p);
    const Mat4 k2 = master_rhs(rho + (h / 2.0) * k1, p);
    const Mat4 k3 = master_rhs(rho + (h / 2.0) * k2, p);
    const Mat4 k4 = master_rhs(rho + h * k3, p);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (detail::is_sample_step(step, n, cfg.sample_every)) {
      const double t = static_cast<double>(step) * h;
      detail::validate_sample(rho, t, tol::kTrace);
      traj.times.push_back(t);
      traj.states.push_back(rho);
    }
  }
  return traj;
}

/// Exact propagation through the vectorized equation: rho(t_k) =
/// unvec(expm(L t_k) vec(rho0)). Steps reuse the one-step exponential,
/// which equals the direct exponential at every sample by the semigroup
/// property (checked in the test suite).
inline StateTrajectory integrate_exp(const DensityMatrix& rho0,
                                     const ModelParams& p,
                                     const IntegratorConfig& cfg) {
  p.require_valid();
  cfg.require_valid(p);
  require_valid_state(rho0);

  const long n = detail::step_count(cfg.t_end, cfg.dt);
  const double h = n > 0 ? cfg.t_end / static_cast<double>(n) : 0.0;

  const Superoperator l = build_superoperator(p);
  const Mat16 u = expm<Mat16>(l.entries * Complex(h, 0.0));

  StateTrajectory traj;
  Vec16 state = vec(rho0);
  detail::validate_sample(rho0, 0.0, tol::kTraceExp);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  for (long step = 1; step <= n; ++step) {
    state = u * state;
    if (detail::is_sample_step(step, n, cfg.sample_every)) {
      const double t = static_cast<double>(step) * h;
      const DensityMatrix rho = unvec(state);
      detail::validate_sample(rho, t, tol::kTraceExp);
      traj.times.push_back(t);
      traj.states.push_back(rho);
    }
  }
  return traj;
}

inline StateTrajectory integrate(const DensityMatrix& rho0,
                                 const ModelParams& p,
                                 const IntegratorConfig& cfg) {
  return cfg.method == Method::RK4Fixed ? integrate_rk(rho0, p, cfg)
                                        : integrate_exp(rho0, p, cfg);
}

/// Single-state propagation to an arbitrary time through the exact
/// exponential; the re-propagation primitive used for boundary refinement.
inline DensityMatrix propagate_exp(const DensityMatrix& rho0,
                                   const Superoperator& l, double t) {
  if (t == 0.0) return rho0;
  return unvec(expm<Mat16>(l.entries * Complex(t, 0.0)) * vec(rho0));
}

}  // namespace qdyn
