#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdyn {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat16 = Eigen::Matrix<Complex, 16, 16>;
using Vec16 = Eigen::Matrix<Complex, 16, 1>;

/// Two-qubit density matrix in the fixed product basis (see Basis).
using DensityMatrix = Mat4;

// Product basis, fixed across the whole library. Qubit A is the left
// Kronecker factor:
//   0 = |e>_A |e>_B,  1 = |e>_A |g>_B,  2 = |g>_A |e>_B,  3 = |g>_A |g>_B
enum Basis : int { kEE = 0, kEG = 1, kGE = 2, kGG = 3 };

namespace tol {
// Construction paths must hit kExact; integrator output is held to the
// looser kHerm/kTrace/kPsd.
inline constexpr double kExact = 1e-14;
inline constexpr double kHerm = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kTraceExp = 1e-12;
inline constexpr double kPsd = 1e-8;
}  // namespace tol

struct InvalidStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ModelMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PositivityViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalBreakdownError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GridTooCoarseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Environment { Decay, Dephasing };

/// Physical constants of the two-qubit model. All rates and couplings are
/// plain numbers in the caller's time unit; the canonical choice is the
/// active bath rate = 1 (time axis gamma*t or Gamma*t).
struct ModelParams {
  double omega0 = 0.0;       // qubit transition frequency
  double v = 0.0;            // qubit-qubit flip-flop coupling
  double gamma_a = 0.0;      // spontaneous decay rate, qubit A
  double gamma_b = 0.0;      // spontaneous decay rate, qubit B
  double dephasing_a = 0.0;  // pure dephasing rate, qubit A
  double dephasing_b = 0.0;  // pure dephasing rate, qubit B
  Environment environment = Environment::Decay;

  // One bath model at a time: decay parameters and dephasing parameters are
  // mutually exclusive.
  void require_valid() const {
    if (omega0 < 0.0 || gamma_a < 0.0 || gamma_b < 0.0 || dephasing_a < 0.0 ||
        dephasing_b < 0.0) {
      throw InvalidStateError("ModelParams: rates and omega0 must be >= 0");
    }
    if (environment == Environment::Decay &&
        (dephasing_a != 0.0 || dephasing_b != 0.0)) {
      throw ModelMismatchError(
          "ModelParams: dephasing rates must be zero in Decay mode");
    }
    if (environment == Environment::Dephasing &&
        (gamma_a != 0.0 || gamma_b != 0.0)) {
      throw ModelMismatchError(
          "ModelParams: decay rates must be zero in Dephasing mode");
    }
  }

  /// Largest active bath rate, or 1 when the system is bathless. Used as
  /// the reference unit for the integrator step bound.
  double rate_unit() const {
    const double r = environment == Environment::Decay
                         ? std::max(gamma_a, gamma_b)
                         : std::max(dephasing_a, dephasing_b);
    return r > 0.0 ? r : 1.0;
  }

  static ModelParams decay(double v, double gamma_a, double gamma_b,
                           double omega0 = 0.0) {
    ModelParams p;
    p.environment = Environment::Decay;
    p.v = v;
    p.gamma_a = gamma_a;
    p.gamma_b = gamma_b;
    p.omega0 = omega0;
    p.require_valid();
    return p;
  }

  static ModelParams dephasing(double v, double big_gamma_a,
                               double big_gamma_b, double omega0 = 0.0) {
    ModelParams p;
    p.environment = Environment::Dephasing;
    p.v = v;
    p.dephasing_a = big_gamma_a;
    p.dephasing_b = big_gamma_b;
    p.omega0 = omega0;
    p.require_valid();
    return p;
  }
};

inline double hermiticity_error(const Mat4& rho) {
  return (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
}

inline double trace_error(const Mat4& rho) {
  return std::abs(rho.trace() - Complex(1.0, 0.0));
}

inline double min_eigenvalue(const Mat4& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Validates the three density-matrix invariants, throwing on the first
/// violation. Violations are reported, never repaired.
inline void require_valid_state(const Mat4& rho, double tol_herm = tol::kHerm,
                                double tol_trace = tol::kTrace,
                                double tol_psd = tol::kPsd) {
  const double h = hermiticity_error(rho);
  if (h > tol_herm) {
    throw InvalidStateError("density matrix not Hermitian: asymmetry " +
                            std::to_string(h));
  }
  const double t = trace_error(rho);
  if (t > tol_trace) {
    throw InvalidStateError("density matrix trace off by " +
                            std::to_string(t));
  }
  const double e = min_eigenvalue(rho);
  if (e < -tol_psd) {
    throw PositivityViolationError("density matrix eigenvalue " +
                                   std::to_string(e) + " below -tol_psd");
  }
}

/// X-form state: diagonal populations plus the single |eg><ge| coherence.
/// The overall scale is kept as an explicit factor (1/3 for the canonical
/// one-parameter family) so the weights themselves can stay unnormalized.
struct XState {
  double a = 0.0;  // |ee| weight
  double b = 0.0;  // |eg| weight
  double c = 0.0;  // |ge| weight
  double d = 0.0;  // |gg| weight
  Complex z{0.0, 0.0};  // coherence between |eg> and |ge>
  double normalization = 1.0;

  double rho11() const { return normalization * a; }
  double rho22() const { return normalization * b; }
  double rho33() const { return normalization * c; }
  double rho44() const { return normalization * d; }
  Complex rho23() const { return normalization * z; }

  DensityMatrix to_density_matrix() const {
    if (a < -tol::kExact || b < -tol::kExact || c < -tol::kExact ||
        d < -tol::kExact) {
      throw InvalidStateError("XState: negative weight");
    }
    const double zz = std::norm(z);
    if (zz > b * c + tol::kExact * std::max(1.0, b * c)) {
      throw InvalidStateError("XState: |z|^2 exceeds b*c");
    }
    const double tr = normalization * (a + b + c + d);
    if (std::abs(tr - 1.0) > tol::kTrace) {
      throw InvalidStateError("XState: normalization*(a+b+c+d) != 1");
    }
    DensityMatrix rho = DensityMatrix::Zero();
    rho(kEE, kEE) = rho11();
    rho(kEG, kEG) = rho22();
    rho(kGE, kGE) = rho33();
    rho(kGG, kGG) = rho44();
    rho(kEG, kGE) = rho23();
    rho(kGE, kEG) = std::conj(rho23());
    return rho;
  }
};

struct XProjection {
  XState state;
  double residual = 0.0;  // largest |entry| outside the X pattern
};

/// Reads the X-pattern entries out of an arbitrary matrix and reports how
/// far the rest of the matrix is from zero. Never fails; the residual is
/// the diagnostic.
inline XProjection project_to_x_form(const DensityMatrix& rho) {
  XProjection out;
  out.state.a = rho(kEE, kEE).real();
  out.state.b = rho(kEG, kEG).real();
  out.state.c = rho(kGE, kGE).real();
  out.state.d = rho(kGG, kGG).real();
  out.state.z = rho(kEG, kGE);
  out.state.normalization = 1.0;
  double r = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool x_pattern = (i == j) || (i == kEG && j == kGE) ||
                             (i == kGE && j == kEG);
      if (!x_pattern) r = std::max(r, std::abs(rho(i, j)));
    }
  }
  // Imaginary parts on the diagonal are off-pattern too.
  for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(rho(i, i).imag()));
  out.residual = r;
  return out;
}

/// One-parameter mixed family: weights (a, 1, 1, 1-a), unit-modulus
/// coherence exp(i*chi), overall factor 1/3. Werner-like for chi = 0.
struct WernerFamilyInit {
  double a = 0.0;    // in [0, 1]
  double chi = 0.0;  // initial coherence phase

  XState to_x_state() const {
    if (a < 0.0 || a > 1.0) {
      throw InvalidStateError("WernerFamilyInit: a must lie in [0, 1]");
    }
    XState x;
    x.a = a;
    x.b = 1.0;
    x.c = 1.0;
    x.d = 1.0 - a;
    x.z = Complex(std::cos(chi), std::sin(chi));
    x.normalization = 1.0 / 3.0;
    return x;
  }

  DensityMatrix to_density_matrix() const {
    return to_x_state().to_density_matrix();
  }
};

}  // namespace qdyn
