#include "nahmlab/clifford.hpp"

#include <stdexcept>

namespace nahmlab {

CliffordRep::CliffordRep() {
  const cplx i(0.0, 1.0);
  sigma_[0] << 0, i, i, 0;
  sigma_[1] << 0, 1, -1, 0;
  sigma_[2] << i, 0, 0, -i;
  sigma_[3] << 1, 0, 0, 1;
  for (int mu = 0; mu < 4; ++mu) minus_sigma_dag_[mu] = -sigma_[mu].adjoint();
  basis_[0] << 1, 0;
  basis_[1] << 0, 1;
}

Eigen::Matrix4cd CliffordRep::c_full(int mu) const {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c.block<2, 2>(2, 0) = sigma_[mu];
  c.block<2, 2>(0, 2) = minus_sigma_dag_[mu];
  return c;
}

Vec2 CliffordRep::act_minus(int mu, const Vec2& psi_plus) const {
  if (mu < 1 || mu > 4) throw std::invalid_argument("act_minus: axis index must be 1..4");
  return sigma_[mu - 1] * psi_plus;
}

Vec2 CliffordRep::act_plus(int mu, const Vec2& psi_minus) const {
  if (mu < 1 || mu > 4) throw std::invalid_argument("act_plus: axis index must be 1..4");
  return minus_sigma_dag_[mu - 1] * psi_minus;
}

Mat2 CliffordRep::quaternion_symbol(const std::array<double, 4>& f) const {
  Mat2 q = Mat2::Zero();
  for (int mu = 0; mu < 4; ++mu) q += f[mu] * sigma_[mu];
  return q;
}

Mat2 CliffordRep::form_plus(int mu, int nu) const {
  return 0.25 * (sigma_[mu].adjoint() * sigma_[nu] - sigma_[nu].adjoint() * sigma_[mu]);
}

Mat2 CliffordRep::form_minus(int mu, int nu) const {
  return 0.25 * (sigma_[mu] * sigma_[nu].adjoint() - sigma_[nu] * sigma_[mu].adjoint());
}

const CliffordRep& clifford_rep() {
  static const CliffordRep rep;
  return rep;
}

}  // namespace nahmlab
