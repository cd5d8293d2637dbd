#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nahmlab/gauge.hpp"
#include "nahmlab/quad.hpp"
#include "oracles.hpp"

using namespace nahmlab;

TEST_CASE("closed-form monomial moments") {
  CHECK(monomial_integral({0, 0, 0, 0}, 1.0) == doctest::Approx(kPi * kPi / 2).epsilon(1e-15));
  CHECK(monomial_integral({2, 0, 0, 0}, 1.0) == doctest::Approx(kPi * kPi / 12).epsilon(1e-15));
  CHECK(monomial_integral({1, 0, 0, 0}, 2.5) == 0.0);
  CHECK(monomial_integral({1, 2, 0, 1}, 1.0) == 0.0);
  // sum over axes of second moments equals the radial moment
  double s = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    MIdx a{0, 0, 0, 0};
    a[mu] = 2;
    s += monomial_integral(a, 1.0);
  }
  CHECK(s == doctest::Approx(kPi * kPi / 3).epsilon(1e-15));
}

TEST_CASE("ball rule: weights and volume") {
  BallRule rule({24, 16, 16, 24}, 1.0);
  CHECK(std::abs(rule.weight_sum() - kPi * kPi / 2) <= 1e-12 * kPi * kPi / 2);
  BallRule r2({8, 6, 6, 8}, 0.7);
  const double vol = kPi * kPi / 2 * std::pow(0.7, 4);
  CHECK(std::abs(r2.weight_sum() - vol) <= 1e-12 * vol);
  CHECK_THROWS(BallRule({1, 4, 4, 4}, 1.0));
  CHECK_THROWS(BallRule({4, 4, 4, 4}, -1.0));
}

TEST_CASE("every monomial of degree <= 8 is integrated to closed form") {
  BallRule rule({24, 16, 16, 24}, 1.0);
  MonomialTable tab(8);
  for (int i = 0; i < tab.size(); ++i) {
    const MIdx& a = tab[i];
    const double exact = monomial_integral(a, 1.0);
    const cplx got = integrate(rule, [&](const Point4& x) {
      double v = 1.0;
      for (int d = 0; d < 4; ++d)
        for (int p = 0; p < a[d]; ++p) v *= x[d];
      return cplx(v);
    });
    if (exact == 0.0)
      CHECK(std::abs(got.real()) <= 1e-12);
    else
      CHECK(std::abs(got.real() - exact) <= 1e-10 * std::abs(exact));
    CHECK(std::abs(got.imag()) <= 1e-14);
  }
}

TEST_CASE("reference integrands") {
  BallRule rule({24, 16, 16, 24}, 1.0);
  const cplx one = integrate(rule, [](const Point4&) { return cplx(1.0); });
  CHECK(std::abs(one.real() - kPi * kPi / 2) <= 1e-12);
  const cplx r2 = integrate(rule, [](const Point4& x) { return cplx(x.norm2()); });
  CHECK(std::abs(r2.real() - kPi * kPi / 3) <= 1e-10);
  const cplx xy = integrate(rule, [](const Point4& x) { return cplx(x[0] * x[1]); });
  CHECK(std::abs(xy.real()) <= 1e-12);
}

TEST_CASE("integration is linear and deterministic") {
  BallRule rule({12, 8, 8, 12}, 1.0);
  auto f = [](const Point4& x) { return cplx(x[0] * x[0], x[3]); };
  auto g = [](const Point4& x) { return cplx(std::exp(x[1])); };
  const cplx a = integrate(rule, f), b = integrate(rule, g);
  const cplx both = integrate(rule, [&](const Point4& x) { return 2.0 * f(x) - 3.0 * g(x); });
  CHECK(std::abs(both - (2.0 * a - 3.0 * b)) <= 1e-13);
  // bitwise reproducibility of the pairwise reduction
  CHECK(integrate(rule, f) == a);
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(6, -1.0, 3.0, x, w);
  for (int deg = 0; deg <= 11; ++deg) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], deg);
    const double exact = (std::pow(3.0, deg + 1) - std::pow(-1.0, deg + 1)) / (deg + 1);
    CHECK(std::abs(s - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("radial rational table matches direct quadrature") {
  RadialRationalTable rad(0.3, 1.0, 12);
  BallRule rule({48, 12, 12, 16}, 1.0);
  const MIdx a{2, 0, 2, 0};
  for (int k : {1, 2}) {
    const double got = rad.ball_moment(a, k);
    const cplx q = integrate(rule, [&](const Point4& x) {
      const double v = x[0] * x[0] * x[2] * x[2];
      return cplx(v / std::pow(x.norm2() + 0.09, k));
    });
    CHECK(std::abs(got - q.real()) <= 1e-9 * std::abs(got));
  }
}

TEST_CASE("resolution gate: doubling the orders moves the instanton energy below 1e-6") {
  const GaugeField a = bpst_field(0.15, {});
  const BallRule r1({24, 16, 16, 24}, 1.0);
  const BallRule r2({48, 32, 32, 48}, 1.0);
  const double e1 = ball_energy(a, 1.0, r1), e2 = ball_energy(a, 1.0, r2);
  CHECK(std::abs(e1 - e2) / e2 <= 1e-6);
  // and the value agrees with the independent 1-D oracle
  CHECK(std::abs(e2 - oracles::instanton_ball_energy_1d(0.15, 1.0)) <= 1e-6);
}
