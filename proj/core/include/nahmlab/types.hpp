#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace nahmlab {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kPi = 3.14159265358979323846;

/// A point of Euclidean R^4.
struct Point4 {
  std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};

  double& operator[](int i) { return x[i]; }
  double operator[](int i) const { return x[i]; }

  double norm2() const { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]; }
  double norm() const { return std::sqrt(norm2()); }

  Point4 operator+(const Point4& o) const {
    return {{x[0] + o.x[0], x[1] + o.x[1], x[2] + o.x[2], x[3] + o.x[3]}};
  }
  Point4 operator-(const Point4& o) const {
    return {{x[0] - o.x[0], x[1] - o.x[1], x[2] - o.x[2], x[3] - o.x[3]}};
  }
  Point4 operator*(double c) const { return {{c * x[0], c * x[1], c * x[2], c * x[3]}}; }
};

inline double dot(const Point4& a, const Point4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Closed ball B(R) centred at the origin.
struct BallDomain {
  double radius = 1.0;
};

/// Index pairs (mu,nu), mu<nu, in the fixed component order used for curvature.
inline constexpr std::array<std::pair<int, int>, 6> kPairOrder = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace nahmlab
