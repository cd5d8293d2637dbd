#pragma once

#include <functional>
#include <memory>
#include <string>

#include "nahmlab/types.hpp"

namespace nahmlab {

enum class FieldKind { flat, bpst, twisted, custom };

/// Structured form of the potential, available for the built-in fields with
/// center at the origin:
///   A_mu(x) = (sum_lam C[mu][lam] x_lam) / (|x|^2 + rho^2)  +  Z[mu].
/// It lets every L^2 pairing against polynomial fields reduce to closed-form
/// angular moments times 1-D radial integrals, so the large assemblies carry
/// no 4-D quadrature error.
struct RationalCoupling {
  std::array<std::array<MatrixXcd, 4>, 4> C;
  std::array<MatrixXcd, 4> Z;
  double rho = 0.0;  // rho == 0: no rational part, Z only
};

/// A gauge potential on the closed ball, with curvature evaluation.
/// Immutable after construction; evaluation is pure.
class GaugeField {
 public:
  using PotentialFn = std::function<std::array<MatrixXcd, 4>(const Point4&)>;
  using CurvatureFn = std::function<std::array<MatrixXcd, 6>(const Point4&)>;

  GaugeField(int rank, FieldKind kind, PotentialFn pot, CurvatureFn curv);

  int rank() const { return rank_; }
  FieldKind kind() const { return kind_; }

  std::array<MatrixXcd, 4> potential(const Point4& x) const { return pot_(x); }

  /// Analytic curvature for the built-ins, central-difference fallback otherwise.
  std::array<MatrixXcd, 6> curvature(const Point4& x) const;

  /// Central-difference curvature at step h (second order in h).
  std::array<MatrixXcd, 6> curvature_fd(const Point4& x, double h) const;

  bool has_analytic_curvature() const { return bool(curv_); }

  const RationalCoupling* coupling() const { return coupling_.get(); }

  double bpst_rho() const { return rho_; }
  Point4 bpst_center() const { return center_; }
  Point4 twist_vector() const { return twist_; }

 private:
  friend GaugeField flat_field(int);
  friend GaugeField bpst_field(double, const Point4&);
  friend GaugeField twist(const GaugeField&, const Point4&);

  int rank_;
  FieldKind kind_;
  PotentialFn pot_;
  CurvatureFn curv_;
  std::shared_ptr<const RationalCoupling> coupling_;
  double rho_ = 0.0;
  Point4 center_{};
  Point4 twist_{};
};

/// The trivial flat field of the given rank.
GaugeField flat_field(int rank);

/// Regular-gauge charge-1 instanton of scale rho centred at p0, rank 2.
/// The orientation is pinned so the curvature is anti-self-dual under the
/// conventions of clifford_rep(); total energy over R^4 is 1.
GaugeField bpst_field(double rho, const Point4& center = {});

/// base + 2 pi i z_mu dx_mu on the same bundle.
GaugeField twist(const GaugeField& base, const Point4& z);

/// Pointwise norm of the self-dual part of F under the artifact's orientation;
/// zero iff F(x) is anti-self-dual.
double asd_residual(const GaugeField& a, const Point4& x);

/// sum_{mu<nu} |F_mu_nu(x)|_F^2.
double energy_density(const GaugeField& a, const Point4& x);

class BallRule;  // quad.hpp

/// (1/8pi^2) \int_{B(R)} energy_density via the supplied rule.
double ball_energy(const GaugeField& a, double R, const BallRule& rule);

std::string to_string(FieldKind k);

}  // namespace nahmlab
