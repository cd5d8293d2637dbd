#pragma once

#include <functional>

#include "nahmlab/bergmann.hpp"
#include "nahmlab/quad.hpp"

namespace nahmlab {

/// Toeplitz symbol operator T = sum_mu fhat_mu chat_mu on B (x) S-,
/// spin-major layout like dirac_hat.
struct SymbolOp {
  MatrixXcd t;                    // 2m x 2m
  std::array<MatrixXcd, 4> fhat;  // Hermitian Toeplitz blocks
  double boundary_margin = 0.0;   // min_{|x|=R} |f_T(x)| over sampled boundary points
  int symbol_degree = 0;          // homotopy degree of f_T on the boundary
};

/// Affine symbol f_mu(x) = x_mu - y_mu (exact moments; degree from |y| vs R).
SymbolOp symbol_op_affine(const BergmannSpace& b, const Point4& y);

/// General real symbols with caller-supplied degree; Toeplitz blocks by
/// quadrature.
SymbolOp symbol_op(const BergmannSpace& b, const std::array<std::function<double(Point4)>, 4>& f,
                   int degree, const BallRule& rule);

/// Degree of the affine symbol x - y on the boundary sphere.
int affine_degree(const Point4& y, double R);

/// Near-null singular data of T with truncation-edge filtering: near-null
/// singular pairs whose vectors concentrate in the top polynomial degrees are
/// truncation artifacts, not kernel/cokernel members.
struct IndexResult {
  int dim_ker = 0;
  int dim_coker = 0;
  int index = 0;
  bool conclusive = true;
  double gap = 0.0;          // singular-value gap at the threshold
  VectorXd singulars;        // ascending
  MatrixXcd kernel;          // filtered kernel frame (2m x dim_ker)
};

IndexResult numerical_index(const SymbolOp& op, const BergmannSpace& b, double eps_rel = 1e-6);

/// Checks of the explicit flat-line-bundle kernel element at y = 0:
/// angle of -(eta_1 (x) eps(eta_1) + eta_2 (x) eps(eta_2)) against the
/// computed kernel, the bubble solve of its defining relation, and the
/// harmonicity of rho/|x|^2 for rho = (|x|^2-R^2)/2.
struct KernelCheck {
  double kernel_angle = 0.0;
  double tau_residual = 0.0;
  double harmonicity = 0.0;
};

KernelCheck explicit_kernel_check(const BergmannSpace& b, const GreenSolver& solver,
                                  const IndexResult& idx);

}  // namespace nahmlab
