#pragma once

#include <functional>
#include <vector>

#include "nahmlab/moments.hpp"
#include "nahmlab/types.hpp"

namespace nahmlab {

struct QuadOrders {
  int nr = 24;
  int nt1 = 16;
  int nt2 = 16;
  int nphi = 24;
};

/// Product quadrature over the ball in hyperspherical coordinates:
/// Gauss-Legendre in r, Gauss rules in cos(theta1) (Chebyshev second kind,
/// absorbing the sin^2 weight) and cos(theta2), trapezoid in the periodic phi.
/// Integrates every monomial the angular orders can resolve exactly.
class BallRule {
 public:
  BallRule(const QuadOrders& orders, double R);

  int size() const { return int(nodes_.size()); }
  const Point4& node(int i) const { return nodes_[i]; }
  double weight(int i) const { return weights_[i]; }
  double radius() const { return R_; }
  const QuadOrders& orders() const { return orders_; }

  double weight_sum() const;

 private:
  QuadOrders orders_;
  double R_;
  std::vector<Point4> nodes_;
  std::vector<double> weights_;
};

BallRule ball_rule(const QuadOrders& orders, double R);

/// Deterministic pairwise tree reduction; the result is independent of any
/// evaluation schedule.
template <typename T>
T pairwise_sum(const std::vector<T>& v, size_t lo, size_t hi) {
  if (hi - lo == 1) return v[lo];
  const size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

cplx integrate(const BallRule& rule, const std::function<cplx(const Point4&)>& f);

}  // namespace nahmlab
