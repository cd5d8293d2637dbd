#include "nahmlab/gauge.hpp"

#include <stdexcept>

#include "nahmlab/clifford.hpp"
#include "nahmlab/quad.hpp"

namespace nahmlab {

namespace {

// 't Hooft tensor Theta_{mu nu} = eta^a_{mu nu} Pauli_a / (2i), the family that is
// anti-self-dual under the artifact's orientation (the one annihilated by the
// positive-chirality Weitzenboeck term of clifford_rep()).
const std::array<std::array<Mat2, 4>, 4>& theta_tensor() {
  static const auto theta = [] {
    std::array<std::array<Mat2, 4>, 4> th;
    const cplx i(0.0, 1.0);
    std::array<Mat2, 3> pauli;
    pauli[0] << 0, 1, 1, 0;
    pauli[1] << 0, -i, i, 0;
    pauli[2] << 1, 0, 0, -1;
    auto eta = [](int a, int mu, int nu) -> double {  // all 1-based
      if (mu == 4 && nu == 4) return 0.0;
      if (mu == 4) return -(a == nu ? 1.0 : 0.0);
      if (nu == 4) return (a == mu ? 1.0 : 0.0);
      // epsilon_{a mu nu}
      if (a == mu || a == nu || mu == nu) return 0.0;
      return double((mu - a + 3) % 3 == 1 ? 1 : -1);
    };
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        th[mu][nu] = Mat2::Zero();
        for (int a = 0; a < 3; ++a)
          th[mu][nu] += eta(a + 1, mu + 1, nu + 1) * pauli[a] / cplx(0.0, 2.0);
      }
    return th;
  }();
  return theta;
}

}  // namespace

GaugeField::GaugeField(int rank, FieldKind kind, PotentialFn pot, CurvatureFn curv)
    : rank_(rank), kind_(kind), pot_(std::move(pot)), curv_(std::move(curv)) {
  if (rank_ < 1) throw std::invalid_argument("GaugeField: rank must be >= 1");
}

std::array<MatrixXcd, 6> GaugeField::curvature(const Point4& x) const {
  if (curv_) return curv_(x);
  return curvature_fd(x, 1e-4);
}

std::array<MatrixXcd, 6> GaugeField::curvature_fd(const Point4& x, double h) const {
  std::array<std::array<MatrixXcd, 4>, 4> dA;  // dA[mu][nu] = d_mu A_nu
  for (int mu = 0; mu < 4; ++mu) {
    Point4 xp = x, xm = x;
    xp[mu] += h;
    xm[mu] -= h;
    const auto ap = pot_(xp), am = pot_(xm);
    for (int nu = 0; nu < 4; ++nu) dA[mu][nu] = (ap[nu] - am[nu]) / (2.0 * h);
  }
  const auto a = pot_(x);
  std::array<MatrixXcd, 6> f;
  for (int p = 0; p < 6; ++p) {
    const auto [mu, nu] = kPairOrder[p];
    f[p] = dA[mu][nu] - dA[nu][mu] + a[mu] * a[nu] - a[nu] * a[mu];
  }
  return f;
}

GaugeField flat_field(int rank) {
  const MatrixXcd z = MatrixXcd::Zero(rank, rank);
  GaugeField g(
      rank, FieldKind::flat,
      [z](const Point4&) {
        return std::array<MatrixXcd, 4>{z, z, z, z};
      },
      [z](const Point4&) {
        return std::array<MatrixXcd, 6>{z, z, z, z, z, z};
      });
  auto c = std::make_shared<RationalCoupling>();
  for (int mu = 0; mu < 4; ++mu) {
    for (int lam = 0; lam < 4; ++lam) c->C[mu][lam] = z;
    c->Z[mu] = z;
  }
  c->rho = 0.0;
  g.coupling_ = std::move(c);
  return g;
}

GaugeField bpst_field(double rho, const Point4& center) {
  if (rho <= 0.0) throw std::invalid_argument("bpst_field: rho must be positive");
  const auto& th = theta_tensor();
  auto pot = [rho, center, &th](const Point4& x) {
    const Point4 y = x - center;
    const double q = y.norm2() + rho * rho;
    std::array<MatrixXcd, 4> a;
    for (int mu = 0; mu < 4; ++mu) {
      Mat2 s = Mat2::Zero();
      for (int nu = 0; nu < 4; ++nu) s += th[mu][nu] * y[nu];
      a[mu] = MatrixXcd(2.0 / q * s);
    }
    return a;
  };
  auto curv = [rho, center, &th](const Point4& x) {
    const Point4 y = x - center;
    const double q = y.norm2() + rho * rho;
    const double c = -4.0 * rho * rho / (q * q);
    std::array<MatrixXcd, 6> f;
    for (int p = 0; p < 6; ++p) {
      const auto [mu, nu] = kPairOrder[p];
      f[p] = MatrixXcd(c * th[mu][nu]);
    }
    return f;
  };
  GaugeField g(2, FieldKind::bpst, std::move(pot), std::move(curv));
  g.rho_ = rho;
  g.center_ = center;
  const bool centred = center.norm2() == 0.0;
  if (centred) {
    auto c = std::make_shared<RationalCoupling>();
    for (int mu = 0; mu < 4; ++mu) {
      for (int lam = 0; lam < 4; ++lam) c->C[mu][lam] = MatrixXcd(2.0 * th[mu][lam]);
      c->Z[mu] = MatrixXcd::Zero(2, 2);
    }
    c->rho = rho;
    g.coupling_ = std::move(c);
  }
  return g;
}

GaugeField twist(const GaugeField& base, const Point4& z) {
  const int r = base.rank();
  const MatrixXcd id = MatrixXcd::Identity(r, r);
  auto basepot = base;
  auto pot = [basepot, z, id](const Point4& x) {
    auto a = basepot.potential(x);
    for (int mu = 0; mu < 4; ++mu) a[mu] += cplx(0.0, 2.0 * kPi * z[mu]) * id;
    return a;
  };
  GaugeField::CurvatureFn curv;
  if (base.has_analytic_curvature())
    curv = [basepot](const Point4& x) { return basepot.curvature(x); };
  GaugeField g(r, FieldKind::twisted, std::move(pot), std::move(curv));
  g.rho_ = base.bpst_rho();
  g.center_ = base.bpst_center();
  g.twist_ = base.twist_vector() + z;
  if (const auto* bc = base.coupling()) {
    auto c = std::make_shared<RationalCoupling>(*bc);
    for (int mu = 0; mu < 4; ++mu) c->Z[mu] += cplx(0.0, 2.0 * kPi * z[mu]) * id;
    g.coupling_ = std::move(c);
  }
  return g;
}

double asd_residual(const GaugeField& a, const Point4& x) {
  const auto f = a.curvature(x);
  // Components of the self-dual projection under the artifact's orientation.
  const MatrixXcd g1 = f[3] - f[2];         // F_23 - F_14
  const MatrixXcd g2 = -(f[1] + f[4]);      // -(F_13 + F_24)
  const MatrixXcd g3 = f[0] - f[5];         // F_12 - F_34
  return std::sqrt(0.5 * (g1.squaredNorm() + g2.squaredNorm() + g3.squaredNorm()));
}

double energy_density(const GaugeField& a, const Point4& x) {
  const auto f = a.curvature(x);
  double s = 0.0;
  for (const auto& m : f) s += m.squaredNorm();
  return s;
}

double ball_energy(const GaugeField& a, double R, const BallRule& rule) {
  if (std::abs(rule.radius() - R) > 1e-12 * std::max(1.0, R))
    throw std::invalid_argument("ball_energy: rule radius mismatch");
  const cplx e = integrate(rule, [&](const Point4& x) { return cplx(energy_density(a, x)); });
  return e.real() / (8.0 * kPi * kPi);
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::flat: return "flat";
    case FieldKind::bpst: return "bpst";
    case FieldKind::twisted: return "twisted";
    default: return "custom";
  }
}

}  // namespace nahmlab
