#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nahmlab/bergmann.hpp"
#include "nahmlab/clifford.hpp"
#include "nahmlab/errors.hpp"
#include "nahmlab/linalg.hpp"
#include "nahmlab/quad.hpp"

using namespace nahmlab;

namespace {
VectorXcd constant_bergmann(const BergmannSpace& b, int comp) {
  const AnsatzSpace& v = b.space;
  const MatrixXd og = v.scalar_orthonormalizer().transpose() * v.scalar_gram();
  VectorXd gen = VectorXd::Zero(v.n_scalar());
  gen(0) = 1.0;
  VectorXcd on = VectorXcd::Zero(v.dim());
  on.segment(comp * v.m_scalar(), v.m_scalar()) = (og * gen).cast<cplx>();
  return b.basis.adjoint() * on;
}
}  // namespace

TEST_CASE("basis columns are orthonormal and projector-consistent") {
  const BergmannSpace b = compute_bergmann(flat_field(1), 3, 1.0, 1e-8);
  const MatrixXcd g = b.basis.adjoint() * b.basis;
  CHECK((g - MatrixXcd::Identity(b.dim(), b.dim())).cwiseAbs().maxCoeff() <= 1e-10);
  // P0 = basis basis^dag is Hermitian idempotent
  const MatrixXcd p = b.basis * b.basis.adjoint();
  CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("twist invariance of the discrete space") {
  // The twisted space equals e^{-2 pi i z.x} times the untwisted one.
  const Point4 z{{3e-5, 1.5e-5, 0, 0}};
  const GaugeField tw = twist(flat_field(1), z);
  const BergmannSpace bt = compute_bergmann(tw, 4, 1.0, 1e-8);
  const BergmannSpace bf = compute_bergmann(flat_field(1), 4, 1.0, 1e-8);
  REQUIRE(bt.dim() == bf.dim());
  // project the phase-multiplied flat basis onto the trial space by quadrature
  const AnsatzSpace& v = bt.space;
  BallRule rule({20, 12, 12, 16}, 1.0);
  MatrixXcd target = MatrixXcd::Zero(v.dim(), bf.dim());
  for (int k = 0; k < rule.size(); ++k) {
    const Point4& x = rule.node(k);
    const cplx ph = std::exp(cplx(0, -2 * kPi * dot(z, x)));
    VectorXd mono(v.n_scalar());
    for (int i = 0; i < v.n_scalar(); ++i) {
      const MIdx& a = v.monomials()[i];
      double val = 1.0;
      for (int d = 0; d < 4; ++d)
        for (int p = 0; p < a[d]; ++p) val *= x[d];
      mono(i) = val;
    }
    const VectorXd bas = v.scalar_orthonormalizer().transpose() * mono;
    for (int j = 0; j < bf.dim(); ++j) {
      const VectorXcd fv = ph * bf.space.evaluate(VectorXcd(bf.basis.col(j)), x);
      for (int comp = 0; comp < 2; ++comp)
        target.col(j).segment(comp * v.m_scalar(), v.m_scalar()) +=
            rule.weight(k) * fv(comp) * bas.cast<cplx>();
    }
  }
  Eigen::HouseholderQR<MatrixXcd> qr(target);
  const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(v.dim(), bf.dim());
  const VectorXd ang = linalg::principal_angles(bt.basis, q);
  CHECK(ang(ang.size() - 1) <= 1e-8);
}

TEST_CASE("position operators") {
  const BergmannSpace b0 = compute_bergmann(flat_field(1), 0, 1.0, 1e-8);
  const ADHMData d0 = position_ops(b0);
  for (int mu = 0; mu < 4; ++mu) CHECK(d0.x[mu].cwiseAbs().maxCoeff() <= 1e-14);

  const BergmannSpace b = compute_bergmann(flat_field(1), 3, 1.0, 1e-8);
  const ADHMData d = position_ops(b);
  for (int mu = 0; mu < 4; ++mu) {
    CHECK((d.x[mu] - d.x[mu].adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(d.x[mu].trace().imag()) <= 1e-12);
    const VectorXd ev = linalg::eigh(d.x[mu]);
    CHECK(std::abs(ev(0)) <= 1.0 + 1e-12);
    CHECK(std::abs(ev(ev.size() - 1)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("commutator residuals decrease with the degree") {
  std::array<double, 3> prev{};
  bool first = true;
  for (int n : {2, 4, 6}) {
    const BergmannSpace b = compute_bergmann(flat_field(1), n, 1.0, 1e-8);
    const auto r = adhm_residual(position_ops(b));
    CHECK(r[0] == doctest::Approx(r[1]).epsilon(1e-10));
    CHECK(r[1] == doctest::Approx(r[2]).epsilon(1e-10));
    if (!first)
      for (int i = 0; i < 3; ++i) CHECK(r[i] < prev[i]);
    prev = r;
    first = false;
  }
  CHECK(prev[0] <= 0.05);  // N = 6
  // coupled background: same decrease between reachable degrees
  const auto r4 = adhm_residual(
      position_ops(compute_bergmann(bpst_field(0.3, {}), 4, 1.0, 2.5e-3, nullptr, 1e-12, 2.0)));
  const auto r6 = adhm_residual(
      position_ops(compute_bergmann(bpst_field(0.3, {}), 6, 1.0, 8e-3, nullptr, 1e-12, 2.0)));
  CHECK(r6[0] < r4[0]);
}

TEST_CASE("oscillator spectrum of the flat space is exactly the degree ladder") {
  // (1/2) lambda_k^2 = (k+2)/(2k+6) with multiplicity (k+1)(k+2)
  const BergmannSpace b = compute_bergmann(flat_field(1), 4, 1.0, 1e-8);
  const SpectrumReport rep = oscillator(b);
  int at = 0;
  for (int k = 0; k <= 4; ++k) {
    const double expect = double(k + 2) / (2 * k + 6);
    for (int m = 0; m < (k + 1) * (k + 2); ++m, ++at)
      CHECK(rep.eigenvalues(at) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(at == b.dim());
  CHECK(rep.eigenvalues(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(rep.eigenvalues(2) > 1.0 / 3.0 + 1e-8);  // multiplicity exactly 2
  CHECK(rep.eigenvalues(b.dim() - 1) < 0.5);
  // ground eigenvectors span the constants
  MatrixXcd consts(b.dim(), 2);
  consts.col(0) = constant_bergmann(b, 0).normalized();
  consts.col(1) = constant_bergmann(b, 1).normalized();
  Eigen::HouseholderQR<MatrixXcd> qr(consts);
  const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(b.dim(), 2);
  const VectorXd ang = linalg::principal_angles(MatrixXcd(rep.vectors.leftCols(2)), q);
  CHECK(ang(1) <= 1e-8);
}

TEST_CASE("rayleigh-ritz monotonicity in the degree") {
  VectorXd prev;
  for (int n : {2, 4, 6}) {
    const SpectrumReport rep = oscillator(compute_bergmann(flat_field(1), n, 1.0, 1e-8));
    if (prev.size())
      for (int k = 0; k < prev.size(); ++k)
        CHECK(rep.eigenvalues(k) <= prev(k) + 1e-10);
    prev = rep.eigenvalues;
  }
}

TEST_CASE("toeplitz compressions of nonnegative symbols are nonnegative") {
  const BergmannSpace b = compute_bergmann(flat_field(1), 3, 1.0, 1e-8);
  // f = R^2 - |x|^2 >= 0 on the ball
  std::vector<MonoTerm> f{{1.0, {0, 0, 0, 0}}};
  for (int mu = 0; mu < 4; ++mu) {
    MIdx e{0, 0, 0, 0};
    e[mu] = 2;
    f.push_back({-1.0, e});
  }
  CHECK(linalg::eigh(toeplitz_poly(b, f)).minCoeff() >= -1e-10);
  // f = x_1^2 >= 0
  CHECK(linalg::eigh(toeplitz_poly(b, {{1.0, {2, 0, 0, 0}}})).minCoeff() >= -1e-10);
}

TEST_CASE("ground-state characterization against the radial closed form") {
  const GaugeField fl = flat_field(1);
  const BergmannSpace b = compute_bergmann(fl, 2, 1.0, 1e-8);
  const SpectrumReport rep = oscillator(b);
  GreenSolver gs(fl, 4, 1.0);
  const ZetaReport z = eigenstate_zeta(b, gs, rep, 0);
  CHECK(z.residual <= 1e-6);
  // match the closed form pointwise through the eigenstate value
  const auto& cl = clifford_rep();
  for (const Point4& x : {Point4{{0.3, -0.2, 0.1, 0.4}}, Point4{{0.1, 0.6, -0.2, 0.0}}}) {
    const VectorXcd sv = b.space.evaluate(VectorXcd(b.basis * rep.vectors.col(0)), x);
    const VectorXcd zv = gs.evaluate(z.coeffs, x);
    Mat2 xbar = Mat2::Zero();
    for (int mu = 0; mu < 4; ++mu) xbar += x[mu] * cl.sigma(mu).adjoint();
    const Vec2 expect = (x.norm2() - 1.0) / 12.0 * (xbar * Vec2(sv(0), sv(1)));
    CHECK((Vec2(zv(0), zv(1)) - expect).norm() <= 1e-6);
  }
}

TEST_CASE("first excited residuals and gradient monitor") {
  const GaugeField fl = flat_field(1);
  const BergmannSpace b = compute_bergmann(fl, 6, 1.0, 1e-8);
  const SpectrumReport rep = oscillator(b);
  GreenSolver gs(fl, 8, 1.0);
  const auto zetas = eigenstate_zeta_all(b, gs, rep, {0, 1, 2, 3, 4});
  for (const auto& z : zetas) {
    CHECK(z.residual <= 1e-4);
    CHECK(z.grad_sq >= 0.0);
  }
}

TEST_CASE("concentration inequalities hold for every eigenstate") {
  const BergmannSpace b = compute_bergmann(flat_field(1), 4, 1.0, 1e-8);
  const SpectrumReport rep = oscillator(b);
  for (int k = 0; k < rep.eigenvalues.size(); ++k)
    for (double r : {0.25, 0.5, 0.75}) {
      const auto [o, bd] = concentration_check(b, rep, k, r);
      CHECK(o <= 1.0 + 1e-8);
      CHECK(bd <= 1.0 + 1e-8);
    }
  // ground state at r = 1/2: mass outside over bound = (1-r^4)/(8/3 r^{-2}...)
  const auto [o, bd] = concentration_check(b, rep, 0, 0.5);
  CHECK(o == doctest::Approx((1.0 - 0.5 * 0.5 * 0.5 * 0.5) / ((2.0 / 3.0) / 0.25)).epsilon(1e-8));
  CHECK_THROWS(concentration_check(b, rep, 0, 1.5));
}

TEST_CASE("the two routes to the transform-side laplacian") {
  const GaugeField fl = flat_field(1);
  const BergmannSpace b = compute_bergmann(fl, 4, 1.0, 1e-8);
  const ADHMData d = position_ops(b);
  GreenSolver gs(fl, 6, 1.0);
  const MatrixXcd w = degree_restricted_subbasis(b, 3);
  CHECK(w.cols() == 40);
  for (const Point4& y : {Point4{}, Point4{{0.3, 0, 0, 0}}}) {
    const MatrixXcd l1 = nahm_laplacian(d, y);
    const MatrixXcd l2 = nahm_laplacian_green(b, y, gs);
    // the identification holds on the degree-stable block; the full matrices
    // differ by the truncation of the top multiplication transitions
    const MatrixXcd r1 = w.adjoint() * l1 * w, r2 = w.adjoint() * l2 * w;
    CHECK((r1 - r2).norm() <= 1e-3 * r2.norm());
    // per-vector quadratic form identity on the restricted block
    for (int j = 0; j < int(w.cols()); ++j)
      CHECK(std::abs(r1(j, j).real() - r2(j, j).real()) <= 1e-3 * std::abs(r2(j, j).real()));
    // invertibility margin at interior points
    CHECK(linalg::eigh(l2).minCoeff() > 0.0);
    CHECK(linalg::eigh(l1).minCoeff() >= -1e-10);
  }
  // constants block oracle at y = 0: 4 pi^2 (2/3 - 4/24) = 2 pi^2
  const MatrixXcd l2 = nahm_laplacian_green(b, {}, gs);
  const VectorXcd c = constant_bergmann(b, 0).normalized();
  CHECK(std::real((c.adjoint() * l2 * c)(0, 0)) == doctest::Approx(2 * kPi * kPi).epsilon(1e-9));
  // exterior margins are reported, not asserted
  const VectorXd ext = linalg::eigh(nahm_laplacian_green(b, {{1.1, 0, 0, 0}}, gs));
  MESSAGE("exterior laplacian min eig: ", ext.minCoeff());
}

TEST_CASE("null-cluster gates fail loudly") {
  CHECK_THROWS_AS(compute_bergmann(bpst_field(0.15, {}), 2, 1.0, 1e-12), GapError);
}
