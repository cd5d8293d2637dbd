#include "nahmlab/quad.hpp"

#include <cmath>
#include <stdexcept>

namespace nahmlab {

BallRule::BallRule(const QuadOrders& orders, double R) : orders_(orders), R_(R) {
  if (R <= 0.0) throw std::invalid_argument("BallRule: radius must be positive");
  if (orders.nr < 2 || orders.nt1 < 2 || orders.nt2 < 2 || orders.nphi < 2)
    throw std::invalid_argument("BallRule: orders must be >= 2");

  std::vector<double> r, wr;
  gauss_legendre(orders.nr, 0.0, R, r, wr);
  std::vector<double> u2, wu2;
  gauss_legendre(orders.nt2, -1.0, 1.0, u2, wu2);

  // Gauss-Chebyshev second kind for the cos(theta1) direction.
  std::vector<double> u1(orders.nt1), wu1(orders.nt1);
  for (int k = 0; k < orders.nt1; ++k) {
    const double t = kPi * (k + 1) / (orders.nt1 + 1);
    u1[k] = std::cos(t);
    wu1[k] = kPi / (orders.nt1 + 1) * std::sin(t) * std::sin(t);
  }

  const double wphi = 2.0 * kPi / orders.nphi;
  nodes_.reserve(size_t(orders.nr) * orders.nt1 * orders.nt2 * orders.nphi);
  weights_.reserve(nodes_.capacity());
  for (int ir = 0; ir < orders.nr; ++ir)
    for (int i1 = 0; i1 < orders.nt1; ++i1) {
      const double s1 = std::sqrt(1.0 - u1[i1] * u1[i1]);
      for (int i2 = 0; i2 < orders.nt2; ++i2) {
        const double s2 = std::sqrt(1.0 - u2[i2] * u2[i2]);
        for (int ip = 0; ip < orders.nphi; ++ip) {
          const double phi = 2.0 * kPi * ip / orders.nphi;
          Point4 x;
          x[0] = r[ir] * s1 * s2 * std::cos(phi);
          x[1] = r[ir] * s1 * s2 * std::sin(phi);
          x[2] = r[ir] * s1 * u2[i2];
          x[3] = r[ir] * u1[i1];
          nodes_.push_back(x);
          weights_.push_back(wr[ir] * r[ir] * r[ir] * r[ir] * wu1[i1] * wu2[i2] * wphi);
        }
      }
    }
}

double BallRule::weight_sum() const { return pairwise_sum(weights_, 0, weights_.size()); }

BallRule ball_rule(const QuadOrders& orders, double R) { return BallRule(orders, R); }

cplx integrate(const BallRule& rule, const std::function<cplx(const Point4&)>& f) {
  std::vector<cplx> vals(rule.size());
  for (int i = 0; i < rule.size(); ++i) vals[i] = rule.weight(i) * f(rule.node(i));
  return pairwise_sum(vals, 0, vals.size());
}

}  // namespace nahmlab
