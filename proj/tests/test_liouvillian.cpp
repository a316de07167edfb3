#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qdyn/liouvillian.hpp"

using namespace qdyn;
using Catch::Approx;

namespace {

DensityMatrix random_state(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(n(rng), n(rng));
  Mat4 rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

DensityMatrix basis_projector(int k) {
  DensityMatrix rho = DensityMatrix::Zero();
  rho(k, k) = 1.0;
  return rho;
}

}  // namespace

TEST_CASE("hamiltonian structure") {
  SECTION("free part is diag(omega0, 0, 0, -omega0)") {
    const Mat4 h = hamiltonian(ModelParams::decay(0.0, 1.0, 1.0, 1.0));
    Mat4 expected = Mat4::Zero();
    expected(kEE, kEE) = 1.0;
    expected(kGG, kGG) = -1.0;
    REQUIRE((h - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("flip-flop term only connects |eg> and |ge>") {
    const Mat4 h = hamiltonian(ModelParams::decay(5.0, 1.0, 1.0, 0.0));
    Mat4 expected = Mat4::Zero();
    expected(kEG, kGE) = 5.0;
    expected(kGE, kEG) = 5.0;
    REQUIRE((h - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("eigenvalues at omega0 = 1, v = 5") {
    // The inner 2x2 block [[0, v], [v, 0]] diagonalizes to +-v; the outer
    // levels sit at +-omega0.
    const Mat4 h = hamiltonian(ModelParams::decay(5.0, 1.0, 1.0, 1.0));
    Eigen::SelfAdjointEigenSolver<Mat4> es(h, Eigen::EigenvaluesOnly);
    std::array<double, 4> expected{-5.0, -1.0, 1.0, 5.0};
    for (int i = 0; i < 4; ++i) {
      REQUIRE(es.eigenvalues()(i) ==
              Approx(expected[static_cast<std::size_t>(i)]).margin(1e-13));
    }
  }
}

TEST_CASE("decay rhs") {
  const ModelParams p = ModelParams::decay(3.0, 1.0, 1.0);

  SECTION("ground state is stationary") {
    const Mat4 r = decay_rhs(basis_projector(kGG), p);
    REQUIRE(r.cwiseAbs().maxCoeff() <= 1e-15);
  }
  SECTION("doubly excited state rate equations") {
    const Mat4 r = decay_rhs(basis_projector(kEE), p);
    CHECK(r(kEE, kEE).real() == Approx(-2.0));
    CHECK(r(kEG, kEG).real() == Approx(1.0));
    CHECK(r(kGE, kGE).real() == Approx(1.0));
    CHECK(r(kGG, kGG).real() == Approx(0.0).margin(1e-15));
  }
  SECTION("trace annihilation and hermiticity on random states") {
    std::mt19937 rng(11);
    const ModelParams pu = ModelParams::decay(5.0, 1.0, 0.3, 0.7);
    for (int k = 0; k < 50; ++k) {
      const Mat4 r = decay_rhs(random_state(rng), pu);
      REQUIRE(std::abs(r.trace()) <= 1e-13);
      REQUIRE((r - r.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-13);
    }
  }
  SECTION("model mismatch") {
    CHECK_THROWS_AS(decay_rhs(basis_projector(kGG),
                              ModelParams::dephasing(0.0, 1.0, 1.0)),
                    ModelMismatchError);
  }
}

TEST_CASE("dephasing rhs") {
  SECTION("any diagonal state with v = 0 is stationary") {
    const ModelParams p = ModelParams::dephasing(0.0, 1.0, 2.0);
    DensityMatrix rho = DensityMatrix::Zero();
    rho(kEE, kEE) = 0.3;
    rho(kEG, kEG) = 0.2;
    rho(kGE, kGE) = 0.4;
    rho(kGG, kGG) = 0.1;
    REQUIRE(dephasing_rhs(rho, p).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SECTION("coherence decays at exactly Gamma_A + Gamma_B") {
    const double ga = 0.7, gb = 1.9;
    const ModelParams p = ModelParams::dephasing(0.0, ga, gb);
    const DensityMatrix rho = WernerFamilyInit{0.4, 0.9}.to_density_matrix();
    const Mat4 r = dephasing_rhs(rho, p);
    REQUIRE(std::abs(r(kEG, kGE) - (-(ga + gb) * rho(kEG, kGE))) <= 1e-15);
  }
  SECTION("bath never touches populations, even with coherences present") {
    std::mt19937 rng(12);
    const ModelParams p = ModelParams::dephasing(0.0, 1.3, 0.8);
    for (int k = 0; k < 50; ++k) {
      const Mat4 r = dephasing_rhs(random_state(rng), p);
      REQUIRE(std::abs(r.trace()) <= 1e-13);
      for (int i = 0; i < 4; ++i) REQUIRE(std::abs(r(i, i)) <= 1e-15);
    }
  }
  SECTION("model mismatch") {
    CHECK_THROWS_AS(
        dephasing_rhs(basis_projector(kGG), ModelParams::decay(0.0, 1.0, 1.0)),
        ModelMismatchError);
  }
}

TEST_CASE("rhs closes on the x form") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ModelParams pd = ModelParams::decay(5.0, 1.0, 0.4, 2.0);
  const ModelParams pf = ModelParams::dephasing(4.0, 1.0, 1.7, 3.0);
  for (int k = 0; k < 50; ++k) {
    XState x;
    x.a = u(rng);
    x.b = 0.1 + u(rng);
    x.c = 0.1 + u(rng);
    x.d = u(rng);
    x.z = std::polar(u(rng) * std::sqrt(x.b * x.c), 2.0 * M_PI * u(rng));
    x.normalization = 1.0 / (x.a + x.b + x.c + x.d);
    const DensityMatrix rho = x.to_density_matrix();
    REQUIRE(project_to_x_form(decay_rhs(rho, pd)).residual <= 1e-13);
    REQUIRE(project_to_x_form(dephasing_rhs(rho, pf)).residual <= 1e-13);
  }
}

TEST_CASE("superoperator") {
  SECTION("everything off yields the zero matrix") {
    const Superoperator l = build_superoperator(ModelParams::decay(0.0, 0.0, 0.0));
    REQUIRE(l.entries.cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("|gg><gg| spans the decay kernel") {
    const Superoperator l =
        build_superoperator(ModelParams::decay(5.0, 1.0, 1.0));
    REQUIRE((l.entries * vec(basis_projector(kGG))).cwiseAbs().maxCoeff() <=
            1e-12);
  }
  SECTION("matches the rhs elementwise on random states") {
    std::mt19937 rng(14);
    const ModelParams pd = ModelParams::decay(5.0, 1.0, 0.6, 0.9);
    const ModelParams pf = ModelParams::dephasing(2.5, 0.7, 1.1, 0.4);
    const Superoperator ld = build_superoperator(pd);
    const Superoperator lf = build_superoperator(pf);
    for (int k = 0; k < 100; ++k) {
      const DensityMatrix rho = random_state(rng);
      REQUIRE((ld.entries * vec(rho) - vec(decay_rhs(rho, pd)))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
      REQUIRE((lf.entries * vec(rho) - vec(dephasing_rhs(rho, pf)))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
    }
  }
  SECTION("trace functional lies in the left null space") {
    const Vec16 tr = vec(Mat4::Identity());
    for (const ModelParams& p : {ModelParams::decay(5.0, 1.0, 0.2, 0.8),
                                 ModelParams::dephasing(10.0, 1.0, 1.4)}) {
      const Superoperator l = build_superoperator(p);
      REQUIRE((l.entries.adjoint() * tr).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("vectorization conventions") {
  std::mt19937 rng(15);
  const DensityMatrix rho = random_state(rng);
  const DensityMatrix a = random_state(rng);

  // Column stacking: entry (i, j) lands at i + 4j.
  REQUIRE(vec(rho)(kEG + 4 * kGE) == rho(kEG, kGE));
  REQUIRE((unvec(vec(rho)) - rho).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((super_left(a) * vec(rho) - vec(a * rho)).cwiseAbs().maxCoeff() <=
          1e-14);
  REQUIRE((super_right(a) * vec(rho) - vec(rho * a)).cwiseAbs().maxCoeff() <=
          1e-14);
}
