#pragma once

#include "nahmlab/types.hpp"

namespace nahmlab {

/// Fixed realization of the chiral spin algebra of R^4.
///
/// S+ and S- are each C^2. The Clifford generator c_mu acts on S+ (+) S- as
///   c_mu = [ 0        -sigma_mu^dag ]
///          [ sigma_mu  0            ]
/// with sigma_j = i * Pauli_j for j = 1,2,3 and sigma_4 = Id, so that
/// c_mu c_nu + c_nu c_mu = -2 delta_{mu nu} and c_mu^dag = -c_mu.
///
/// epsilon is the antilinear quaternionic structure (a,b) -> (-conj b, conj a),
/// applied componentwise on either chirality; it squares to -1, reverses the
/// Hermitian pairing and commutes with every c_mu.
class CliffordRep {
 public:
  CliffordRep();

  const Mat2& sigma(int mu) const { return sigma_[mu]; }

  /// Block of c_mu mapping S+ -> S-.
  const Mat2& c_plus_to_minus(int mu) const { return sigma_[mu]; }
  /// Block of c_mu mapping S- -> S+.
  const Mat2& c_minus_to_plus(int mu) const { return minus_sigma_dag_[mu]; }

  /// Full 4x4 generator on S+ (+) S-.
  Eigen::Matrix4cd c_full(int mu) const;

  /// c_mu applied to a positive spinor, landing in S-.
  Vec2 act_minus(int mu, const Vec2& psi_plus) const;
  /// c_mu applied to a negative spinor, landing in S+.
  Vec2 act_plus(int mu, const Vec2& psi_minus) const;

  /// Antilinear conjugation on either chirality.
  static Vec2 epsilon(const Vec2& psi) { return Vec2(-std::conj(psi(1)), std::conj(psi(0))); }

  /// Orthonormal bases eta_1, eta_2 of S- and eta'_1, eta'_2 of S+.
  Vec2 eta_minus(int k) const { return basis_[k]; }
  Vec2 eta_plus(int k) const { return basis_[k]; }

  /// Quaternion symbol q(f) = sum_mu f_mu sigma_mu; satisfies q(f)^dag q(f) = |f|^2 for real f.
  Mat2 quaternion_symbol(const std::array<double, 4>& f) const;

  /// Antisymmetrized two-form actions of the algebra:
  ///   form_plus(m,n)  = (1/4)(sigma_m^dag sigma_n - sigma_n^dag sigma_m)  on S+,
  ///   form_minus(m,n) = (1/4)(sigma_m sigma_n^dag - sigma_n sigma_m^dag)  on S-.
  Mat2 form_plus(int mu, int nu) const;
  Mat2 form_minus(int mu, int nu) const;

 private:
  std::array<Mat2, 4> sigma_;
  std::array<Mat2, 4> minus_sigma_dag_;
  std::array<Vec2, 2> basis_;
};

/// The shared immutable representation.
const CliffordRep& clifford_rep();

}  // namespace nahmlab
