#pragma once

#include <vector>

#include "nahmlab/diracop.hpp"
#include "nahmlab/gauge.hpp"
#include "nahmlab/types.hpp"

namespace nahmlab {

struct MonoTerm {
  double coeff;
  MIdx mono;
};

/// Discrete Bergmann space: the span of Dirac-form eigenvectors whose
/// Rayleigh quotients lie below eps_null * ||Q||, guarded by a spectral gap.
struct BergmannSpace {
  AnsatzSpace space;        // parent V_N(S-)
  MatrixXcd basis;          // dim_V x m, L2-orthonormal columns (V ON coordinates)
  VectorXd null_residuals;  // kept Rayleigh quotients, ascending
  double eps_null = 0.0;    // relative threshold used
  double gap = 0.0;         // first dropped / last kept
  double q_norm = 0.0;      // largest form eigenvalue
  double first_dropped = 0.0;
  FieldKind kind = FieldKind::flat;

  int dim() const { return int(basis.cols()); }
  int degree() const { return space.degree(); }
  int rank() const { return space.rank(); }
  double radius() const { return space.radius(); }
};

/// Build the discrete Bergmann space of a gauge field at polynomial degree N.
/// Throws when the null cluster is not separated by a factor >= gap_min at the
/// requested threshold (raise N, the quadrature orders, or eps_null). Exact
/// backgrounds resolve gaps ~ 1e13; coupled backgrounds produce a residual
/// cascade whose separation is audited through the gap report.
BergmannSpace compute_bergmann(const GaugeField& a, int degree, double R, double eps_null_rel,
                               const BallRule* rule = nullptr, double cond_tol = 1e-12,
                               double gap_min = 100.0);

/// Scalar Toeplitz block of a real polynomial on the parent space's
/// orthonormal scalar basis (acts identically on every component).
MatrixXd toeplitz_scalar(const AnsatzSpace& v, const std::vector<MonoTerm>& f);

/// Toeplitz operator of a real polynomial compressed to the Bergmann space.
MatrixXcd toeplitz_poly(const BergmannSpace& b, const std::vector<MonoTerm>& f);

/// The four ADHM position operators X_mu (compressions of x_mu).
struct ADHMData {
  std::array<MatrixXcd, 4> x;
  int degree = 0;
  FieldKind kind = FieldKind::flat;
  double eps_null = 0.0;
};

ADHMData position_ops(const BergmannSpace& b);

/// Frobenius norms of the three commutator combinations whose vanishing is
/// the anti-self-duality of the transform under this artifact's orientation
///   [X1,X2]-[X3,X4],  [X1,X3]+[X2,X4],  [X2,X3]-[X1,X4],
/// normalized by sum_mu ||X_mu||_F^2.
std::array<double, 3> adhm_residual(const ADHMData& d);

/// Harmonic-oscillator spectrum on the Bergmann space.
struct EigenstateDiag {
  double half_lambda_sq = 0.0;
  double lambda = 0.0;
  double zeta_residual = -1.0;   // -1 until filled
  double zeta_grad_sq = -1.0;    // ||grad zeta||^2 (monitoring)
  double origin_ratio = -1.0;    // worst ratio of the origin-concentration bound
  double boundary_ratio = -1.0;  // worst ratio of the boundary-concentration bound
};

struct SpectrumReport {
  VectorXd eigenvalues;  // (1/2) lambda_k^2, ascending
  MatrixXcd vectors;     // columns in the Bergmann basis
  std::vector<EigenstateDiag> states;
  double radius = 1.0;
};

SpectrumReport oscillator(const BergmannSpace& b);

/// Unique positive spinor with D+ zeta = (|x|^2/2R^2 - lambda^2/2) s, solved on
/// bubble spinors.
struct ZetaReport {
  VectorXcd coeffs;      // bubble spinor coefficients
  double residual = 0.0; // ||D+ zeta - rhs|| / ||rhs||
  double grad_sq = 0.0;  // ||grad zeta||^2
};

ZetaReport eigenstate_zeta(const BergmannSpace& b, const GreenSolver& solver,
                           const SpectrumReport& rep, int k);

/// Batched zeta solves for a selection of eigenstates (all when empty).
std::vector<ZetaReport> eigenstate_zeta_all(const BergmannSpace& b, const GreenSolver& solver,
                                            const SpectrumReport& rep,
                                            const std::vector<int>& which = {});

/// Concentration ratios of an eigenstate at radius r: first the origin bound
///   int_{B \ B(r)} |s|^2 <= (lambda^2 R^2/r^2) int |s|^2,
/// then the boundary bound
///   int_{B(r)} |s|^2 <= ((1-lambda^2) R^2/(R^2-r^2)) int |s|^2,
/// each returned as (left side)/(right side).
std::pair<double, double> concentration_check(const BergmannSpace& b, const SpectrumReport& rep,
                                              int k, double r);

/// Fill zeta residuals and concentration diagnostics for every eigenstate.
void fill_spectrum_diagnostics(const BergmannSpace& b, const GreenSolver& solver,
                               SpectrumReport& rep, const std::vector<double>& probe_radii);

/// ADHM-side Laplacian 4 pi^2 sum (X_mu - y_mu)^2.
MatrixXcd nahm_laplacian(const ADHMData& d, const Point4& y);

/// Ball-side identification 4 pi^2 (Toeplitz(|x-y|^2) - 4 G0) on the Bergmann
/// basis, with the Green operator solved on bubbles.
MatrixXcd nahm_laplacian_green(const BergmannSpace& b, const Point4& y,
                               const GreenSolver& solver);

/// Orthonormal basis, in Bergmann-basis coordinates, of the subspace of the
/// Bergmann span consisting of fields of monomial degree <= dmax (for
/// truncation-stable comparisons of compressed operators).
MatrixXcd degree_restricted_subbasis(const BergmannSpace& b, int dmax, double tol = 1e-8);

/// Mass of a Bergmann-basis vector inside B(r0), exact moments.
double mass_inside(const BergmannSpace& b, const VectorXcd& bergmann_coeffs, double r0);

/// Split of a near-null orthonormal frame over B (x) S (spin-major layout,
/// two blocks of dim(b)) into truncation-edge directions, whose coefficient
/// mass concentrates in the top two monomial degrees, and clean directions
/// with top-degree amplitude <= top_tol. Used by the finite-section kernel
/// and index computations, where the square truncation of a nonzero-index
/// operator necessarily manufactures edge-localized null ghosts.
struct EdgeSplit {
  MatrixXcd clean;  // orthonormal frame of the filtered subspace
  int n_edge = 0;
  bool ambiguous = false;  // a direction fell between the thresholds
};
EdgeSplit split_edge_modes(const BergmannSpace& b, const MatrixXcd& frame, double top_tol = 0.3);

}  // namespace nahmlab
