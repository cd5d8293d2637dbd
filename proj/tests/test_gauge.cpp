#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nahmlab/gauge.hpp"
#include "nahmlab/quad.hpp"
#include "oracles.hpp"

using namespace nahmlab;

namespace {
const std::vector<Point4> kSamples = {{{0.3, 0, 0, 0}},
                                      {{0.1, -0.4, 0.2, 0.05}},
                                      {{-0.5, 0.3, -0.2, 0.4}},
                                      {{0, 0, 0, 0.85}}};
}

TEST_CASE("flat field is identically zero") {
  const GaugeField f = flat_field(2);
  for (const auto& x : kSamples) {
    for (const auto& a : f.potential(x)) CHECK(a.norm() == 0.0);
    for (const auto& c : f.curvature(x)) CHECK(c.norm() == 0.0);
    CHECK(asd_residual(f, x) == 0.0);
  }
  BallRule rule({8, 6, 6, 8}, 1.0);
  CHECK(ball_energy(f, 1.0, rule) == 0.0);
  CHECK_THROWS(flat_field(0));
}

TEST_CASE("instanton potential is anti-Hermitian with antisymmetric ASD curvature") {
  const GaugeField b = bpst_field(0.2, {});
  for (const auto& x : kSamples) {
    const auto a = b.potential(x);
    for (int mu = 0; mu < 4; ++mu)
      CHECK((a[mu].adjoint() + a[mu]).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(asd_residual(b, x) <= 1e-8);
  }
  CHECK_THROWS(bpst_field(-0.1, {}));
  CHECK_THROWS(bpst_field(0.0, {}));
  // off-centre instanton: still ASD, no structured coupling
  const GaugeField bc = bpst_field(0.25, {{0.2, -0.1, 0, 0.1}});
  CHECK(bc.coupling() == nullptr);
  for (const auto& x : kSamples) CHECK(asd_residual(bc, x) <= 1e-8);
}

TEST_CASE("instanton energy: charge one and ball deficit") {
  BallRule rule({32, 16, 16, 24}, 1.0);
  // (1/8pi^2) int_B |F|^2 against the independent radial oracle
  for (double rho : {0.3, 0.2, 0.15}) {
    const GaugeField b = bpst_field(rho, {});
    const double e = ball_energy(b, 1.0, rule);
    CHECK(std::abs(e - oracles::instanton_ball_energy_1d(rho, 1.0)) <= 2e-6);
    CHECK(std::abs(e - oracles::instanton_ball_energy_exact(rho, 1.0)) <= 2e-6);
  }
  // charge-1 normalization: the whole-space energy approaches one
  {
    BallRule big({40, 16, 16, 24}, 3.0);
    const double charge = ball_energy(bpst_field(0.2, {}), 3.0, big);
    CHECK(std::abs(charge - 1.0) <= 1e-3);
    CHECK(std::abs(charge - oracles::instanton_ball_energy_1d(0.2, 3.0)) <= 1e-6);
  }
  // monotone approach to 1 as rho/R -> 0
  BallRule fine({48, 16, 16, 24}, 1.0);
  const double e3 = ball_energy(bpst_field(0.3, {}), 1.0, fine);
  const double e2 = ball_energy(bpst_field(0.2, {}), 1.0, fine);
  const double e1 = ball_energy(bpst_field(0.1, {}), 1.0, fine);
  CHECK(e3 < e2);
  CHECK(e2 < e1);
  CHECK(e1 < 1.0);
  // monotone in R
  BallRule small({32, 16, 16, 24}, 0.8);
  CHECK(ball_energy(bpst_field(0.2, {}), 0.8, small) < e2);
  CHECK_THROWS(ball_energy(bpst_field(0.2, {}), 0.8, fine));  // radius mismatch
}

TEST_CASE("twists") {
  const GaugeField f = flat_field(1);
  const Point4 z{{0.3, -0.2, 0.1, 0.7}};
  const GaugeField tw = twist(f, z);
  for (const auto& x : kSamples) {
    for (const auto& c : tw.curvature(x)) CHECK(c.norm() == 0.0);
    CHECK(asd_residual(tw, x) == 0.0);
    const auto a = tw.potential(x);
    CHECK(std::abs(a[0](0, 0) - cplx(0, 2 * kPi * 0.3)) <= 1e-15);
  }
  // twist by zero and inverse twist reproduce the base
  const GaugeField b = bpst_field(0.3, {});
  const GaugeField b0 = twist(b, {});
  const GaugeField bz = twist(twist(b, z), z * -1.0);
  for (const auto& x : kSamples) {
    const auto pa = b.potential(x), pb = b0.potential(x), pc = bz.potential(x);
    for (int mu = 0; mu < 4; ++mu) {
      CHECK((pa[mu] - pb[mu]).cwiseAbs().maxCoeff() <= 1e-15);
      CHECK((pa[mu] - pc[mu]).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  // twisted instanton keeps the structured coupling
  CHECK(twist(b, z).coupling() != nullptr);
  CHECK(twist(b, z).coupling()->rho == doctest::Approx(0.3));
}

TEST_CASE("finite-difference curvature converges at second order") {
  const GaugeField b = bpst_field(0.25, {});
  const Point4 x{{0.3, 0.1, -0.2, 0.15}};
  const auto exact = b.curvature(x);
  auto err = [&](double h) {
    const auto fd = b.curvature_fd(x, h);
    double e = 0.0;
    for (int p = 0; p < 6; ++p) e = std::max(e, (fd[p] - exact[p]).cwiseAbs().maxCoeff());
    return e;
  };
  const double r = err(2e-3) / err(1e-3);
  CHECK(r >= 3.5);
  CHECK(r <= 4.5);
}

TEST_CASE("gauge covariance of the diagnostics") {
  const GaugeField b = bpst_field(0.3, {});
  Mat2 u;
  u << cplx(0.6, 0.0), cplx(0.0, 0.8), cplx(0.0, 0.8), cplx(0.6, 0.0);  // unitary
  GaugeField conj(2, FieldKind::custom,
                  [b, u](const Point4& x) {
                    auto a = b.potential(x);
                    for (auto& m : a) m = MatrixXcd(u * m * u.adjoint());
                    return a;
                  },
                  [b, u](const Point4& x) {
                    auto f = b.curvature(x);
                    for (auto& m : f) m = MatrixXcd(u * m * u.adjoint());
                    return f;
                  });
  for (const auto& x : kSamples) {
    CHECK(std::abs(asd_residual(conj, x) - asd_residual(b, x)) <= 1e-12);
    CHECK(std::abs(energy_density(conj, x) - energy_density(b, x)) <=
          1e-12 * energy_density(b, x));
  }
}
