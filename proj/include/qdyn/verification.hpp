#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qdyn/analytics.hpp"
#include "qdyn/concurrence.hpp"
#include "qdyn/liouvillian.hpp"
#include "qdyn/propagators.hpp"
#include "qdyn/timeline.hpp"
#include "qdyn/types.hpp"

namespace qdyn {

/// One verified property: the measured residual against its pinned
/// tolerance.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckResult make_check(std::string name, double residual,
                              double tolerance) {
  const bool pass = residual <= tolerance;
  return CheckResult{std::move(name), residual, tolerance, pass};
}

/// Worst-case structural drift accumulated over a trajectory.
struct TrajectoryAudit {
  double max_trace_err = 0.0;
  double max_herm_err = 0.0;
  double min_eig = 1.0;
  double max_offx_residual = 0.0;

  void absorb(const StateTrajectory& traj) {
    for (const DensityMatrix& rho : traj.states) {
      max_trace_err = std::max(max_trace_err, trace_error(rho));
      max_herm_err = std::max(max_herm_err, hermiticity_error(rho));
      min_eig = std::min(min_eig, min_eigenvalue(rho));
      max_offx_residual =
          std::max(max_offx_residual, project_to_x_form(rho).residual);
    }
  }
};

inline DensityMatrix random_density_matrix(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(n(rng), n(rng));
  Mat4 rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

inline XState random_x_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  XState x;
  x.a = u(rng);
  x.b = 0.05 + u(rng);
  x.c = 0.05 + u(rng);
  x.d = u(rng);
  const double r = u(rng) * std::sqrt(x.b * x.c);
  const double phi = 2.0 * M_PI * u(rng);
  x.z = r * Complex(std::cos(phi), std::sin(phi));
  x.normalization = 1.0 / (x.a + x.b + x.c + x.d);
  return x;
}

namespace checks {

inline CheckResult werner_trace() {
  double worst = 0.0;
  for (double a : {0.0, 0.1, 1.0 / 3.0, 0.5, 0.9, 1.0}) {
    for (double chi : {0.0, 1.0, M_PI / 2, 5.0}) {
      worst = std::max(
          worst, trace_error(WernerFamilyInit{a, chi}.to_density_matrix()));
    }
  }
  return make_check("werner family unit trace", worst, tol::kExact);
}

inline CheckResult werner_spectrum() {
  double worst = 0.0;
  for (double a : {0.0, 0.2, 0.4, 0.7, 1.0}) {
    const DensityMatrix rho = WernerFamilyInit{a, 0.9}.to_density_matrix();
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho, Eigen::EigenvaluesOnly);
    std::array<double, 4> expected{0.0, a / 3.0, (1.0 - a) / 3.0, 2.0 / 3.0};
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 4; ++i) {
      worst = std::max(worst, std::abs(es.eigenvalues()(i) -
                                       expected[static_cast<std::size_t>(i)]));
    }
  }
  return make_check("werner family spectrum {0, a/3, (1-a)/3, 2/3}", worst,
                    1e-12);
}

inline CheckResult x_round_trip() {
  std::mt19937 rng(7001);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const XState x = random_x_state(rng);
    const DensityMatrix rho = x.to_density_matrix();
    const XProjection proj = project_to_x_form(rho);
    worst = std::max(worst, proj.residual);
    worst = std::max(
        worst,
        (proj.state.to_density_matrix() - rho).cwiseAbs().maxCoeff());
  }
  return make_check("x-state round trip", worst, tol::kExact);
}

inline CheckResult rhs_hermiticity() {
  std::mt19937 rng(7002);
  double worst = 0.0;
  const ModelParams pd = ModelParams::decay(5.0, 1.0, 0.7, 0.3);
  const ModelParams pf = ModelParams::dephasing(4.0, 1.0, 1.6, 0.2);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = random_density_matrix(rng);
    const Mat4 rd = decay_rhs(rho, pd);
    const Mat4 rf = dephasing_rhs(rho, pf);
    worst = std::max(worst, (rd - rd.adjoint().eval()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (rf - rf.adjoint().eval()).cwiseAbs().maxCoeff());
  }
  return make_check("rhs preserves hermiticity", worst, 1e-13);
}

inline CheckResult rhs_trace() {
  std::mt19937 rng(7003);
  double worst = 0.0;
  const ModelParams pd = ModelParams::decay(5.0, 1.0, 1.0, 0.5);
  const ModelParams pf = ModelParams::dephasing(10.0, 0.8, 1.2);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = random_density_matrix(rng);
    worst = std::max(worst, std::abs(decay_rhs(rho, pd).trace()));
    worst = std::max(worst, std::abs(dephasing_rhs(rho, pf).trace()));
  }
  return make_check("rhs annihilates trace", worst, 1e-13);
}

inline CheckResult rhs_x_closure() {
  std::mt19937 rng(7004);
  double worst = 0.0;
  const ModelParams pd = ModelParams::decay(5.0, 1.0, 0.6, 2.0);
  const ModelParams pf = ModelParams::dephasing(4.0, 1.3, 0.9, 1.0);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = random_x_state(rng).to_density_matrix();
    worst = std::max(worst, project_to_x_form(decay_rhs(rho, pd)).residual);
    worst =
        std::max(worst, project_to_x_form(dephasing_rhs(rho, pf)).residual);
  }
  return make_check("rhs closes on the x form", worst, 1e-13);
}

inline CheckResult superoperator_consistency() {
  std::mt19937 rng(7005);
  double worst = 0.0;
  const ModelParams pd = ModelParams::decay(5.0, 1.0, 0.4, 0.7);
  const ModelParams pf = ModelParams::dephasing(2.0, 1.0, 2.0);
  const Superoperator ld = build_superoperator(pd);
  const Superoperator lf = build_superoperator(pf);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = random_density_matrix(rng);
    worst = std::max(worst, (ld.entries * vec(rho) - vec(decay_rhs(rho, pd)))
                                .cwiseAbs()
                                .maxCoeff());
    worst = std::max(worst,
                     (lf.entries * vec(rho) - vec(dephasing_rhs(rho, pf)))
                         .cwiseAbs()
                         .maxCoeff());
  }
  return make_check("superoperator matches rhs", worst, 1e-12);
}

inline CheckResult superoperator_trace_null() {
  double worst = 0.0;
  const Vec16 tr = vec(Mat4::Identity());
  for (const ModelParams& p :
       {ModelParams::decay(5.0, 1.0, 0.7, 0.4),
        ModelParams::dephasing(10.0, 1.0, 1.5, 0.2)}) {
    const Superoperator l = build_superoperator(p);
    worst = std::max(worst,
                     (l.entries.adjoint() * tr).cwiseAbs().maxCoeff());
  }
  return make_check("trace row in the left null space", worst, 1e-12);
}

inline CheckResult expm_semigroup() {
  const ModelParams p = ModelParams::decay(5.0, 1.0, 1.0);
  const DensityMatrix rho0 = WernerFamilyInit{0.4, M_PI / 2}.to_density_matrix();
  const Superoperator l = build_superoperator(p);
  double worst = 0.0;
  for (double t : {0.3, 0.9, 2.4}) {
    const DensityMatrix two_hops =
        propagate_exp(propagate_exp(rho0, l, t), l, t);
    const DensityMatrix direct = propagate_exp(rho0, l, 2.0 * t);
    worst = std::max(worst, (two_hops - direct).cwiseAbs().maxCoeff());
  }
  return make_check("exponential semigroup property", worst, 1e-10);
}

inline CheckResult concurrence_path_equivalence() {
  std::mt19937 rng(7006);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const XState x = random_x_state(rng);
    const double fast = concurrence_x(x).c;
    const double general = concurrence_general(x.to_density_matrix()).c;
    worst = std::max(worst, std::abs(fast - general));
  }
  return make_check("x fast path equals general concurrence", worst, 1e-10);
}

inline CheckResult concurrence_local_unitary() {
  std::mt19937 rng(7007);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const DensityMatrix rho = random_x_state(rng).to_density_matrix();
    const double base = concurrence_general(rho).c;
    Mat2 phase = Mat2::Identity();
    phase(0, 0) = std::polar(1.0, u(rng));
    const Mat4 ua = kron2(phase, Mat2::Identity());
    const Mat4 ub = kron2(Mat2::Identity(), phase);
    worst = std::max(
        worst,
        std::abs(concurrence_general(ua * rho * ua.adjoint()).c - base));
    worst = std::max(
        worst,
        std::abs(concurrence_general(ub * rho * ub.adjoint()).c - base));
  }
  return make_check("local phase invariance of concurrence", worst, 1e-12);
}

// Pins the dephasing dissipator normalization: with S_z = +-1/2 the
// |eg>,|ge> coherence must decay at exactly Gamma_A + Gamma_B.
inline CheckResult dephasing_coherence_law() {
  const double ga = 0.7, gb = 1.3;
  const ModelParams p = ModelParams::dephasing(0.0, ga, gb);
  const DensityMatrix rho0 = WernerFamilyInit{0.3, 0.8}.to_density_matrix();
  IntegratorConfig cfg;
  cfg.dt = 0.005;
  cfg.t_end = 3.0;
  cfg.method = Method::ExpOracle;
  cfg.sample_every = 40;
  const StateTrajectory traj = integrate_exp(rho0, p, cfg);
  double worst = 0.0;
  const Complex z0 = rho0(kEG, kGE);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Complex expected = z0 * std::exp(-(ga + gb) * traj.times[i]);
    worst =
        std::max(worst, std::abs(traj.states[i](kEG, kGE) - expected));
  }
  return make_check("dephasing coherence decays at Gamma_A + Gamma_B", worst,
                    1e-10);
}

inline CheckResult dephasing_population_constancy() {
  const ModelParams p = ModelParams::dephasing(4.0, 1.0, 1.0);
  const DensityMatrix rho0 = WernerFamilyInit{0.4, M_PI / 2}.to_density_matrix();
  IntegratorConfig cfg;
  cfg.dt = dt_max(p);
  cfg.t_end = 5.0;
  cfg.method = Method::RK4Fixed;
  const StateTrajectory traj = integrate_rk(rho0, p, cfg);
  double worst = 0.0;
  for (const DensityMatrix& rho : traj.states) {
    worst = std::max(worst, std::abs(rho(kEE, kEE) - rho0(kEE, kEE)));
    worst = std::max(worst, std::abs(rho(kGG, kGG) - rho0(kGG, kGG)));
  }
  return make_check("dephasing leaves rho11 and rho44 constant", worst, 1e-10);
}

inline CheckResult omega0_independence() {
  const DensityMatrix rho0 = WernerFamilyInit{0.4, M_PI / 4}.to_density_matrix();
  IntegratorConfig cfg;
  cfg.dt = 0.002;
  cfg.t_end = 5.0;
  cfg.method = Method::ExpOracle;
  cfg.sample_every = 10;
  const StateTrajectory a =
      integrate_exp(rho0, ModelParams::decay(5.0, 1.0, 1.0, 0.0), cfg);
  const StateTrajectory b =
      integrate_exp(rho0, ModelParams::decay(5.0, 1.0, 1.0, 100.0), cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ca = concurrence_x(project_to_x_form(a.states[i]).state).c;
    const double cb = concurrence_x(project_to_x_form(b.states[i]).state).c;
    worst = std::max(worst, std::abs(ca - cb));
  }
  return make_check("omega0 drops out of x-state concurrence", worst, 1e-10);
}

inline CheckResult rk_matches_exponential() {
  const ModelParams p = ModelParams::decay(5.0, 1.0, 1.0);
  const DensityMatrix rho0 = WernerFamilyInit{0.4, M_PI / 2}.to_density_matrix();
  IntegratorConfig cfg;
  cfg.dt = dt_max(p);
  cfg.t_end = 5.0;
  const StateTrajectory rk = integrate_rk(rho0, p, cfg);
  cfg.method = Method::ExpOracle;
  const StateTrajectory ex = integrate_exp(rho0, p, cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < rk.size(); ++i) {
    worst = std::max(worst,
                     (rk.states[i] - ex.states[i]).cwiseAbs().maxCoeff());
  }
  return make_check("rk4 agrees with the exponential oracle", worst, 1e-8);
}

inline CheckResult trajectory_structural() {
  TrajectoryAudit audit;
  IntegratorConfig cfg;
  cfg.t_end = 5.0;
  for (const ModelParams& p : {ModelParams::decay(5.0, 1.0, 1.0),
                               ModelParams::dephasing(4.0, 1.0, 1.0)}) {
    const DensityMatrix rho0 =
        WernerFamilyInit{0.4, M_PI / 2}.to_density_matrix();
    cfg.dt = dt_max(p);
    cfg.method = Method::RK4Fixed;
    audit.absorb(integrate_rk(rho0, p, cfg));
    cfg.method = Method::ExpOracle;
    audit.absorb(integrate_exp(rho0, p, cfg));
  }
  const double worst =
      std::max({audit.max_trace_err, audit.max_herm_err,
                audit.max_offx_residual, std::max(0.0, -audit.min_eig)});
  return make_check("trajectory drift (trace/herm/psd/off-x)", worst, 1e-8);
}

inline CheckResult chi_independence_v0() {
  const std::vector<double> chis{0.0, M_PI / 6, M_PI / 4, M_PI / 2};
  IntegratorConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 5.0;
  cfg.method = Method::ExpOracle;
  cfg.sample_every = 5;
  double worst = 0.0;
  for (const ModelParams& p : {ModelParams::decay(0.0, 1.0, 1.0),
                               ModelParams::dephasing(0.0, 1.0, 1.0)}) {
    std::vector<std::vector<double>> traces;
    for (double chi : chis) {
      const StateTrajectory traj = integrate_exp(
          WernerFamilyInit{0.4, chi}.to_density_matrix(), p, cfg);
      std::vector<double> cs;
      for (const DensityMatrix& rho : traj.states) {
        cs.push_back(concurrence_x(project_to_x_form(rho).state).c);
      }
      traces.push_back(std::move(cs));
    }
    for (std::size_t i = 1; i < traces.size(); ++i) {
      for (std::size_t k = 0; k < traces[i].size(); ++k) {
        worst = std::max(worst, std::abs(traces[i][k] - traces[0][k]));
      }
    }
  }
  return make_check("chi-independence at v = 0", worst, 1e-12);
}

inline CheckResult exceptional_point_continuity() {
  double worst = 0.0;
  for (double tau : {0.2, 0.7, 1.9, 4.0}) {
    AnalyticParams lo{0.4, M_PI / 2, 0.5 * (1.0 - 1e-6),
                      Environment::Dephasing};
    AnalyticParams hi{0.4, M_PI / 2, 0.5 * (1.0 + 1e-6),
                      Environment::Dephasing};
    worst = std::max(worst, std::abs(c_tilde_dephasing(lo, tau) -
                                     c_tilde_dephasing(hi, tau)));
  }
  return make_check("continuity across 2v = Gamma", worst, 1e-5);
}

inline CheckResult envelope_bound() {
  std::mt19937 rng(7008);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  const double coeff = (2.0 / 3.0) * (1.0 + std::sqrt(3.0));
  for (int k = 0; k < 5000; ++k) {
    const AnalyticParams p{u(rng), 2.0 * M_PI * u(rng), 10.0 * u(rng),
                           Environment::Decay};
    const double t = 10.0 * u(rng);
    const double bound = coeff * std::exp(-t);
    worst = std::max(worst, std::abs(c_tilde_decay(p, t)) - bound);
  }
  return make_check("decay envelope bound", std::max(worst, 0.0), 0.0);
}

inline CheckResult dark_condition_equivalence() {
  long mismatches = 0;
  for (double a : {0.0, 0.1, 0.35, 0.4, 0.8, 1.0}) {
    for (double chi : {0.0, 0.3, M_PI / 4, M_PI / 2}) {
      for (double v : {0.0, 1.0, 5.0, 10.0}) {
        const AnalyticParams p{a, chi, v, Environment::Decay};
        for (int i = 0; i < 150; ++i) {
          const double t = 8.0 * static_cast<double>(i) / 149.0;
          const bool dark = dark_condition_decay(p, t);
          const bool negative = c_tilde_decay(p, t) < 0.0;
          if (dark != negative) ++mismatches;
        }
      }
    }
  }
  return make_check("dark condition matches the sign of c_tilde",
                    static_cast<double>(mismatches), 0.0);
}

inline CheckResult decay_v0_reduction() {
  double worst = 0.0;
  for (double a : {0.0, 0.2, 0.4, 1.0}) {
    for (double t : {0.0, 0.5, 1.5, 4.0}) {
      const double e = std::exp(-t);
      const double w2 = 1.0 - e;
      const double phase_free =
          (2.0 / 3.0) * e *
          (1.0 - std::sqrt(a * (1.0 - a + 2.0 * w2 + w2 * w2 * a)));
      for (double chi : {0.0, 0.7, M_PI / 2}) {
        const AnalyticParams p{a, chi, 0.0, Environment::Decay};
        worst = std::max(worst, std::abs(c_tilde_decay(p, t) - phase_free));
      }
    }
  }
  return make_check("v = 0 reduces to the phase-free decay law", worst, 1e-12);
}

// --- full-level checks ---

inline CheckResult cross_validation(Environment model,
                                    const std::vector<double>& vs,
                                    TrajectoryAudit* audit = nullptr) {
  double worst = 0.0;
  for (double a : {0.0, 0.2, 0.4, 1.0}) {
    for (double chi : {0.0, M_PI / 4, M_PI / 2}) {
      for (double v : vs) {
        const ModelParams p = model == Environment::Decay
                                  ? ModelParams::decay(v, 1.0, 1.0)
                                  : ModelParams::dephasing(v, 1.0, 1.0);
        const AnalyticParams ap{a, chi, v, model};
        const DensityMatrix rho0 =
            WernerFamilyInit{a, chi}.to_density_matrix();
        IntegratorConfig cfg;
        cfg.dt = dt_max(p);
        cfg.t_end = 5.0;
        for (Method m : {Method::RK4Fixed, Method::ExpOracle}) {
          cfg.method = m;
          const StateTrajectory traj = integrate(rho0, p, cfg);
          if (audit != nullptr) audit->absorb(traj);
          for (std::size_t i = 0; i < traj.size(); ++i) {
            const double expected =
                concurrence_closed_form(ap, traj.times[i]);
            const double ct =
                concurrence_x(project_to_x_form(traj.states[i]).state).c;
            worst = std::max(worst, std::abs(ct - expected));
          }
        }
      }
    }
  }
  const char* label = model == Environment::Decay
                          ? "closed form vs numerics, decay grid"
                          : "closed form vs numerics, dephasing grid";
  return make_check(label, worst, 1e-8);
}

inline CheckResult rk4_convergence_order() {
  const ModelParams p = ModelParams::decay(5.0, 1.0, 1.0);
  const DensityMatrix rho0 = WernerFamilyInit{0.4, M_PI / 2}.to_density_matrix();
  IntegratorConfig cfg;
  cfg.t_end = 2.0;
  cfg.sample_every = 1 << 20;  // final state only

  auto rk_error = [&](double dt) {
    cfg.dt = dt;
    cfg.method = Method::RK4Fixed;
    const DensityMatrix rk = integrate_rk(rho0, p, cfg).back();
    cfg.method = Method::ExpOracle;
    const DensityMatrix ex = integrate_exp(rho0, p, cfg).back();
    return (rk - ex).cwiseAbs().maxCoeff();
  };

  const double coarse = rk_error(dt_max(p));
  const double fine = rk_error(dt_max(p) / 2.0);
  const double order = std::log2(coarse / fine);
  return make_check("rk4 convergence order (|order - 4|)",
                    std::abs(order - 4.0), 0.3);
}

inline CheckResult esd_threshold_grid() {
  long mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const double a = static_cast<double>(i) / 99.0;
    const AnalyticParams p{a, 0.0, 0.0, Environment::Decay};
    const EsdVerdict verdict = esd_threshold_decay(p);

    // Independent route: the radicand a(1-a+2w^2+w^4 a) is increasing in w,
    // so scan it on a dense w-grid up to w = 1 and compare its peak with 1.
    double peak = 0.0;
    for (int k = 0; k <= 20000; ++k) {
      const double w2 = static_cast<double>(k) / 20000.0;
      peak = std::max(peak, a * (1.0 - a + 2.0 * w2 + w2 * w2 * a));
    }
    EsdVerdict expected;
    if (std::abs(peak - 1.0) <= 1e-12) {
      expected = EsdVerdict::Boundary;
    } else {
      expected = peak > 1.0 ? EsdVerdict::EsdOccurs : EsdVerdict::NoEsd;
    }
    if (verdict != expected) ++mismatches;
  }
  return make_check("esd threshold matches dense-grid scan",
                    static_cast<double>(mismatches), 0.0);
}

// Boundary-level agreement between the closed-form evaluator and the
// propagated-state evaluator, over the same grid the concurrence
// cross-validation uses.
inline CheckResult timeline_boundary_agreement() {
  const double horizon = 5.0;
  double worst = 0.0;

  auto run_grid = [&](Environment model, const std::vector<double>& vs) {
    for (double a : {0.0, 0.2, 0.4, 1.0}) {
      for (double chi : {0.0, M_PI / 4, M_PI / 2}) {
        for (double v : vs) {
          const ModelParams p = model == Environment::Decay
                                    ? ModelParams::decay(v, 1.0, 1.0)
                                    : ModelParams::dephasing(v, 1.0, 1.0);
          const AnalyticParams ap{a, chi, v, model};
          const long grid = default_grid_n(horizon, v);

          const EntanglementTimeline analytic = extract_timeline(
              [&](double t) { return c_tilde_closed_form(ap, t); }, horizon,
              grid);
          const NumericCtildeEvaluator numeric(
              WernerFamilyInit{a, chi}.to_density_matrix(), p, horizon, grid);
          const EntanglementTimeline numeric_tl = extract_timeline(
              [&](double t) { return numeric(t); }, horizon, grid);

          if (analytic.intervals.size() != numeric_tl.intervals.size()) {
            worst = std::max(worst, 1.0);
            continue;
          }
          for (std::size_t i = 0; i + 1 < analytic.intervals.size(); ++i) {
            worst = std::max(worst, std::abs(analytic.intervals[i].t_end -
                                             numeric_tl.intervals[i].t_end));
          }
        }
      }
    }
  };

  run_grid(Environment::Decay, {0.0, 5.0});
  run_grid(Environment::Dephasing, {0.0, 0.3, 1.0, 4.0, 10.0});
  return make_check("analytic vs numeric timeline boundaries", worst, 1e-4);
}

inline CheckResult timeline_boundary_residuals() {
  const double horizon = 10.0;
  const AnalyticParams ap{0.4, M_PI / 2, 5.0, Environment::Decay};
  auto f = [&](double t) { return c_tilde_decay(ap, t); };
  const EntanglementTimeline tl =
      extract_timeline(f, horizon, default_grid_n(horizon, 5.0));
  double worst = 0.0;
  long flips_missing = 0;
  for (std::size_t i = 0; i + 1 < tl.intervals.size(); ++i) {
    const double b = tl.intervals[i].t_end;
    worst = std::max(worst, std::abs(f(b)));
    const double eps = 1e-6;
    if (dark_condition_decay(ap, b - eps) ==
        dark_condition_decay(ap, b + eps)) {
      ++flips_missing;
    }
  }
  if (flips_missing > 0) worst = 1.0;
  return make_check("boundary residual |c_tilde(t*)|", worst, 1e-6);
}

}  // namespace checks

inline std::vector<CheckResult> run_verification(bool full) {
  std::vector<CheckResult> out;
  out.push_back(checks::werner_trace());
  out.push_back(checks::werner_spectrum());
  out.push_back(checks::x_round_trip());
  out.push_back(checks::rhs_hermiticity());
  out.push_back(checks::rhs_trace());
  out.push_back(checks::rhs_x_closure());
  out.push_back(checks::superoperator_consistency());
  out.push_back(checks::superoperator_trace_null());
  out.push_back(checks::expm_semigroup());
  out.push_back(checks::concurrence_path_equivalence());
  out.push_back(checks::concurrence_local_unitary());
  out.push_back(checks::dephasing_coherence_law());
  out.push_back(checks::dephasing_population_constancy());
  out.push_back(checks::omega0_independence());
  out.push_back(checks::rk_matches_exponential());
  out.push_back(checks::trajectory_structural());
  out.push_back(checks::chi_independence_v0());
  out.push_back(checks::exceptional_point_continuity());
  out.push_back(checks::envelope_bound());
  out.push_back(checks::dark_condition_equivalence());
  out.push_back(checks::decay_v0_reduction());
  if (full) {
    out.push_back(checks::cross_validation(Environment::Decay, {0.0, 5.0}));
    out.push_back(checks::cross_validation(Environment::Dephasing,
                                           {0.0, 0.3, 1.0, 4.0, 10.0}));
    out.push_back(checks::rk4_convergence_order());
    out.push_back(checks::esd_threshold_grid());
    out.push_back(checks::timeline_boundary_agreement());
    out.push_back(checks::timeline_boundary_residuals());
  }
  return out;
}

}  // namespace qdyn
