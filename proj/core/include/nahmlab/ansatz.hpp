#pragma once

#include <memory>

#include "nahmlab/moments.hpp"
#include "nahmlab/multiindex.hpp"
#include "nahmlab/types.hpp"

namespace nahmlab {

enum class Chirality { plus, minus };

struct OrthoReport {
  MatrixXd transform;  // generators -> orthonormal basis (columns)
  int retained = 0;
  double condition = 0.0;
};

/// Spectral orthonormalization of a Gram matrix: eigendirections with
/// eigenvalue < tol * max are dropped. transform^T * G * transform = Id.
OrthoReport spectral_orthonormalize(const MatrixXd& gram, double tol);

/// Polynomial trial space of spinor fields on B(R): monomials of total degree
/// <= N, values in C^rank (x) S_chirality. With the bubble flag the generators
/// carry the factor (R^2-|x|^2), which enforces the zero boundary condition.
///
/// The L^2 Gram factorizes over the 2*rank components, so conditioning is done
/// once on the scalar monomial Gram (exact moments) and tensored with the
/// component identity. Coefficient layout: component-major, i.e. index =
/// (spin*rank + color)*n_scalar + monomial for generators, and
/// (spin*rank + color)*m_scalar + j for the orthonormal basis.
class AnsatzSpace {
 public:
  static AnsatzSpace poly(int degree, int rank, Chirality chi, double R = 1.0,
                          double cond_tol = 1e-12);
  static AnsatzSpace bubble(int degree, int rank, Chirality chi = Chirality::plus,
                            double R = 1.0, double cond_tol = 1e-12);

  int degree() const { return degree_; }
  int rank() const { return rank_; }
  Chirality chirality() const { return chi_; }
  bool is_bubble() const { return bubble_; }
  double radius() const { return R_; }
  double cond_tol() const { return cond_tol_; }

  const MonomialTable& monomials() const { return *tab_; }
  int n_scalar() const { return tab_->size(); }
  int components() const { return 2 * rank_; }
  int generator_count() const { return components() * n_scalar(); }

  /// Retained dimension of the orthonormal basis.
  int dim() const { return components() * m_scalar(); }
  int m_scalar() const { return ortho_.retained; }
  double condition() const { return ortho_.condition; }

  const MatrixXd& scalar_gram() const { return scalar_gram_; }
  const MatrixXd& scalar_orthonormalizer() const { return ortho_.transform; }

  /// Expand an orthonormal-basis coefficient vector into generator coefficients.
  VectorXcd to_generators(const VectorXcd& coeffs) const;

  /// Value of the field at x, one entry per component (spin*rank+color).
  VectorXcd evaluate(const VectorXcd& coeffs_on_basis, const Point4& x) const;
  VectorXcd evaluate_generators(const VectorXcd& gen_coeffs, const Point4& x) const;

 private:
  AnsatzSpace() = default;

  int degree_ = 0, rank_ = 1;
  Chirality chi_ = Chirality::minus;
  bool bubble_ = false;
  double R_ = 1.0, cond_tol_ = 1e-12;
  std::shared_ptr<const MonomialTable> tab_;
  MatrixXd scalar_gram_;
  OrthoReport ortho_;
};

}  // namespace nahmlab
