#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nahmlab/clifford.hpp"

using namespace nahmlab;

TEST_CASE("clifford relations hold exactly") {
  const auto& cl = clifford_rep();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Eigen::Matrix4cd ac = cl.c_full(mu) * cl.c_full(nu) + cl.c_full(nu) * cl.c_full(mu);
      if (mu == nu) ac += 2.0 * Eigen::Matrix4cd::Identity();
      CHECK(ac.cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("generators are anti-self-adjoint") {
  const auto& cl = clifford_rep();
  for (int mu = 0; mu < 4; ++mu)
    CHECK((cl.c_full(mu).adjoint() + cl.c_full(mu)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("epsilon squares to minus one and reverses the pairing") {
  const auto& cl = clifford_rep();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 16; ++t) {
    Vec2 psi(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
    Vec2 phi(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
    CHECK((cl.epsilon(cl.epsilon(psi)) + psi).norm() <= 1e-15 * psi.norm());
    const cplx lhs = cl.epsilon(psi).dot(cl.epsilon(phi));
    const cplx rhs = phi.dot(psi);
    CHECK(std::abs(lhs - rhs) <= 1e-15);
  }
  CHECK((cl.epsilon(cl.epsilon(cl.eta_minus(0))) + cl.eta_minus(0)).norm() <= 1e-15);
}

TEST_CASE("epsilon commutes with every generator") {
  const auto& cl = clifford_rep();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int mu = 0; mu < 4; ++mu)
    for (int t = 0; t < 8; ++t) {
      Vec2 psi(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
      // on the S+ -> S- block
      CHECK((cl.epsilon(cl.c_plus_to_minus(mu) * psi) -
             cl.c_plus_to_minus(mu) * cl.epsilon(psi))
                .norm() <= 1e-14);
      // on the S- -> S+ block
      CHECK((cl.epsilon(cl.c_minus_to_plus(mu) * psi) -
             cl.c_minus_to_plus(mu) * cl.epsilon(psi))
                .norm() <= 1e-14);
    }
}

TEST_CASE("chiral block actions") {
  const auto& cl = clifford_rep();
  // sigma_4 is the identity under the basis identification
  CHECK((cl.act_minus(4, cl.eta_plus(0)) - cl.eta_minus(0)).norm() <= 1e-15);
  // c_4^2 = -1
  CHECK((cl.act_plus(4, cl.act_minus(4, cl.eta_plus(1))) + cl.eta_plus(1)).norm() <= 1e-15);
  // general axes: act_plus(mu, act_minus(mu, psi)) = -psi
  for (int mu = 1; mu <= 4; ++mu)
    CHECK((cl.act_plus(mu, cl.act_minus(mu, cl.eta_plus(0))) + cl.eta_plus(0)).norm() <= 1e-15);
  // sigma_1 = i Pauli_1
  Mat2 ip1;
  ip1 << 0, cplx(0, 1), cplx(0, 1), 0;
  CHECK((cl.act_minus(1, cl.eta_plus(0)) - ip1 * cl.eta_plus(0)).norm() <= 1e-15);
  CHECK_THROWS(cl.act_minus(0, cl.eta_plus(0)));
  CHECK_THROWS(cl.act_plus(5, cl.eta_minus(0)));
}

TEST_CASE("quaternion symbol is conformal") {
  const auto& cl = clifford_rep();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 12; ++t) {
    std::array<double, 4> f{u(rng), u(rng), u(rng), u(rng)};
    const Mat2 q = cl.quaternion_symbol(f);
    const double n2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3];
    CHECK((q.adjoint() * q - n2 * Mat2::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}
