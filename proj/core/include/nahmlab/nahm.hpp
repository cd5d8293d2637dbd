#pragma once

#include "nahmlab/bergmann.hpp"

namespace nahmlab {

/// Twisted Dirac matrix on the transform side,
///   T_y = -2 pi i sum_mu (X_mu - y_mu) (x) chat_mu : B (x) S- -> B (x) S+,
/// in spin-major layout (index = s*m + i).
MatrixXcd dirac_hat(const ADHMData& d, const Point4& y);

/// Kernel fiber of T_y by singular value decomposition, with truncation-edge
/// ghosts filtered out of the near-null span.
struct FiberData {
  Point4 y;
  MatrixXcd basis;    // 2m x dim, orthonormal kernel frame
  VectorXd singulars; // all singular values, ascending
  double eps_ker = 0.0;
  double gap = 0.0;   // first dropped / last kept (margin vs eps when empty)
  int n_edge = 0;     // filtered edge directions
  int dim() const { return int(basis.cols()); }
};

FiberData fiber(const BergmannSpace& b, const ADHMData& d, const Point4& y, double eps_ker_rel);

/// Orthogonal projection onto ker T_y via the ADHM-side Green operator,
///   P = 1 - T^dag (Ghat (x) 1) T,  Ghat = (4 pi^2 sum (X-y)^2)^{-1}.
MatrixXcd projector_hat(const ADHMData& d, const Point4& y);

/// Transform-side curvature, matrix backend: F_mu_nu = -4 pi^2 [X_mu, X_nu].
std::array<MatrixXcd, 6> curvature_hat(const ADHMData& d);

/// Green-operator backend of the same curvature (independent route).
std::array<MatrixXcd, 6> curvature_hat_green(const BergmannSpace& b, const GreenSolver& solver);

/// Norm of the self-dual part of a six-component curvature under the
/// artifact's orientation.
double asd_residual_components(const std::array<MatrixXcd, 6>& f);
double curvature_norm(const std::array<MatrixXcd, 6>& f);

/// Curvature of the reconstructed connection on the fiber at y.
std::array<MatrixXcd, 6> curvature_double_hat(const ADHMData& d, const Point4& y,
                                              const FiberData& fib);

/// The Green operator applied to every Bergmann basis field, evaluable at
/// points; shared by the canonical map and the correlator.
class GreenAppliedBasis {
 public:
  GreenAppliedBasis(const BergmannSpace& b, const GreenSolver& solver);

  /// Values (G0 sigma_j)(x): (2*rank) x m, component-major rows.
  MatrixXcd eval(const Point4& x) const;

  const BergmannSpace& space() const { return *b_; }
  int rank() const { return solver_->rank(); }

 private:
  const BergmannSpace* b_;
  const GreenSolver* solver_;
  MatrixXcd coeffs_;  // (2*rank*m_bub) x m
};

/// Canonical comparison map alpha: E_y -> B (x) S- evaluated on the standard
/// orthonormal frame of E_y.
struct ReconstructionFiber {
  Point4 y;
  MatrixXcd alpha;  // 2m x rank, spin-major rows like dirac_hat
  MatrixXcd gram;   // alpha^dag alpha, ideally the identity
};

ReconstructionFiber canonical_map(const GreenAppliedBasis& gb, const Point4& y);

/// Correlator matrix in Hom(E_{x2}, E_{x1}); for the flat line bundle equals
/// 4 pi^2 G0(x1,x2) |x1-x2|^2.
MatrixXcd correlator(const GreenAppliedBasis& gb, const Point4& x1, const Point4& x2);

}  // namespace nahmlab
