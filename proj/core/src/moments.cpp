#include "nahmlab/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace nahmlab {

double sphere_moment(const MIdx& a) {
  for (int i = 0; i < 4; ++i)
    if (a[i] % 2 != 0) return 0.0;
  // 2 pi^2 * prod (a_i-1)!! / (2^{|a|/2} ((|a|+2)/2)!)
  double num = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int m = a[i] - 1; m > 1; m -= 2) num *= m;
  const int d = midx_degree(a);
  double den = 1.0;
  for (int m = 0; m < d / 2; ++m) den *= 2.0;
  for (int m = 2; m <= (d + 2) / 2; ++m) den *= m;
  return 2.0 * kPi * kPi * num / den;
}

double monomial_integral(const MIdx& a, double R) {
  const int d = midx_degree(a);
  return sphere_moment(a) * std::pow(R, d + 4) / (d + 4);
}

double monomial_integral_ball(const MIdx& a, double r0) { return monomial_integral(a, r0); }

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev initial guess.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = mid - half * z;
    nodes[n - 1 - i] = mid + half * z;
    weights[i] = weights[n - 1 - i] = 2.0 * half / ((1.0 - z * z) * pp * pp);
  }
}

RadialRationalTable::RadialRationalTable(double rho, double R, int max_power)
    : rho_(rho), R_(R) {
  if (rho <= 0.0) throw std::invalid_argument("RadialRationalTable: rho must be positive");
  const int n = 240;
  std::vector<double> r, w;
  gauss_legendre(n, 0.0, R, r, w);
  t1_.assign(max_power + 1, 0.0);
  t2_.assign(max_power + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const double q = r[i] * r[i] + rho * rho;
    double rp = 1.0;
    for (int d = 0; d <= max_power; ++d) {
      t1_[d] += w[i] * rp / q;
      t2_[d] += w[i] * rp / (q * q);
      rp *= r[i];
    }
  }
}

double RadialRationalTable::ball_moment(const MIdx& a, int k) const {
  const double s = sphere_moment(a);
  if (s == 0.0) return 0.0;
  const int d = midx_degree(a) + 3;
  switch (k) {
    case 0:
      return s * std::pow(R_, d + 1) / (d + 1);
    case 1:
      return s * t1_.at(d);
    case 2:
      return s * t2_.at(d);
    default:
      throw std::invalid_argument("RadialRationalTable: unsupported power");
  }
}

MatrixXd moment_matrix(const MonomialTable& tab, const MIdx& shift, double R, int k,
                       const RadialRationalTable* rad) {
  const int n = tab.size();
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const MIdx g = midx_add(midx_add(tab[i], tab[j]), shift);
      const double v = (k == 0) ? monomial_integral(g, R) : rad->ball_moment(g, k);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace nahmlab
