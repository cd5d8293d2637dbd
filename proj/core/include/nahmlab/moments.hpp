#pragma once

#include <vector>

#include "nahmlab/multiindex.hpp"
#include "nahmlab/types.hpp"

namespace nahmlab {

/// Exact moment of a monomial over the sphere S^3:
///   sphere_moment(a) = \int_{S^3} \prod_i \hat{x}_i^{a_i} dS.
/// Zero unless every exponent is even.
double sphere_moment(const MIdx& a);

/// Exact moment over the ball of radius R:
///   \int_{B(R)} \prod_i x_i^{a_i} dx = sphere_moment(a) * R^{|a|+4} / (|a|+4).
double monomial_integral(const MIdx& a, double R);

/// Same integral restricted to the concentric ball of radius r0 <= R.
double monomial_integral_ball(const MIdx& a, double r0);

/// One-dimensional Gauss-Legendre rule on [a,b]; nodes ascending, deterministic.
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Radial integrals T_k[d] = \int_0^R r^d / (r^2+rho^2)^k dr for k in {0,1,2},
/// precomputed to machine accuracy. Used to reduce couplings of the form
/// poly(x)/(|x|^2+rho^2)^k over the ball to closed-form angular moments.
class RadialRationalTable {
 public:
  RadialRationalTable() = default;
  RadialRationalTable(double rho, double R, int max_power);

  /// \int_{B(R)} x^a / (|x|^2+rho^2)^k dx, exact angular part, 1-D radial quadrature.
  double ball_moment(const MIdx& a, int k) const;

  double rho() const { return rho_; }

 private:
  double rho_ = 0.0;
  double R_ = 1.0;
  std::vector<double> t1_, t2_;  // indexed by radial power d
};

/// Dense symmetric matrix of moments over a monomial table:
///   M[i][j] = \int_B x^{a_i + a_j + shift} / (|x|^2+rho^2)^k dx.
/// k = 0 uses the exact closed form.
MatrixXd moment_matrix(const MonomialTable& tab, const MIdx& shift, double R, int k = 0,
                       const RadialRationalTable* rad = nullptr);

}  // namespace nahmlab
