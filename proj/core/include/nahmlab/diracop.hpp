#pragma once

#include <map>
#include <memory>

#include "nahmlab/ansatz.hpp"
#include "nahmlab/gauge.hpp"
#include "nahmlab/quad.hpp"
#include "nahmlab/types.hpp"

namespace nahmlab {

/// Hermitian positive semidefinite form Q_ij = <D_A phi_i, D_A phi_j> over the
/// orthonormal basis of a polynomial spinor space.
struct DiracForm {
  AnsatzSpace space;
  MatrixXcd q;
};

/// Weak least-squares Dirac form. Fields carrying the structured coupling
/// (flat, centred bpst, their twists) are assembled from exact moments; other
/// fields require a quadrature rule.
DiracForm dirac_form(const GaugeField& a, const AnsatzSpace& space,
                     const BallRule* rule = nullptr);

/// Dirichlet Green operator of the covariant Laplacian on bubble spaces,
/// together with the Dirac-solve machinery built on it. The Laplacian does not
/// touch the spin factor, so one scalar (color-valued) stiffness matrix serves
/// both chiralities; spinor solves go component by component.
class GreenSolver {
 public:
  GreenSolver(const GaugeField& a, int bubble_degree, double R, double cond_tol = 1e-12);

  int rank() const { return rank_; }
  int bubble_degree() const { return degree_; }
  double radius() const { return R_; }
  const MonomialTable& bubble_monomials() const { return *tab_; }
  int m_scalar() const { return int(ortho_.transform.cols()); }
  /// Smallest eigenvalue of the orthonormalized stiffness (reported positivity).
  double stiffness_min_eig() const { return stiff_min_eig_; }

  /// Galerkin solution of Delta_A tau = g with zero boundary values, for g
  /// given by ON-basis coefficient columns in v (spinor layout). Returns
  /// bubble spinor coefficients, layout (spin*rank+color)*m_scalar + k.
  MatrixXcd apply(const AnsatzSpace& v, const MatrixXcd& rhs) const;

  /// <u_i, G0 u_j> for ON coefficient columns u in v.
  MatrixXcd green_gram(const AnsatzSpace& v, const MatrixXcd& u) const;

  /// <u_i, G0 w_j> for ON coefficient columns u, w in v.
  MatrixXcd green_bilinear(const AnsatzSpace& v, const MatrixXcd& u, const MatrixXcd& w) const;

  /// Least-squares solve of D+ zeta = rhs over bubble positive spinors
  /// (normal equations via the stiffness; valid for ASD backgrounds).
  /// The pairing matrix is cached per rhs-space degree.
  struct DplusSolve {
    MatrixXcd coeffs;    // bubble spinor coefficients per column
    VectorXd residual;   // ||D+ zeta - rhs|| / ||rhs|| per column
  };
  DplusSolve dplus_solve(const AnsatzSpace& v, const MatrixXcd& rhs) const;

  /// Residual report ||K c - b|| of the last apply (diagnostic).
  /// Evaluate a bubble spinor coefficient vector at x (2*rank components).
  VectorXcd evaluate(const VectorXcd& coeffs, const Point4& x) const;

  /// Honest <D+ t_i, D+ t_j> Gram on the bubble positive spinor space; equals
  /// stiffness (x) Id_spin exactly when the background is ASD.
  MatrixXcd dplus_gram_spinor() const;
  /// Stiffness (x) Id_spin for comparison.
  MatrixXcd stiffness_spinor() const;

  const MatrixXd& bubble_orthonormalizer() const { return ortho_.transform; }
  const MatrixXcd& stiffness() const { return stiffness_on_; }

  /// Scalar pairing matrix T = O_bub^T <bubble_i, mono_j> O_v (m_bub x m_v).
  MatrixXd scalar_load_matrix(const AnsatzSpace& v) const;

 private:
  MatrixXcd solve_scalar_blocks(const MatrixXcd& loads) const;
  const MatrixXcd& dplus_load_matrix(const AnsatzSpace& v) const;

  GaugeField field_;
  int rank_, degree_;
  double R_;
  std::shared_ptr<const MonomialTable> tab_;
  OrthoReport ortho_;
  MatrixXcd stiffness_on_;   // (rank*m)^2, color-coupled
  MatrixXcd chol_;           // Cholesky factor of stiffness_on_
  double stiff_min_eig_ = 0.0;
  mutable std::map<int, MatrixXcd> dplus_loads_;  // keyed by rhs-space degree
};

/// Closed-form Dirichlet Green function of the flat Laplacian on B(R).
double flat_green_closed(const Point4& p, const Point4& q, double R);

/// Value of a field in a trial space at x (2*rank components).
VectorXcd evaluate_field(const AnsatzSpace& space, const VectorXcd& on_coeffs, const Point4& x);

}  // namespace nahmlab
