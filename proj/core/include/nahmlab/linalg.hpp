#pragma once

#include "nahmlab/types.hpp"

namespace nahmlab::linalg {

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Returns eigenvalues; eigenvectors (columns) replace the input when vecs != nullptr.
VectorXd eigh(const MatrixXcd& a, MatrixXcd* vecs = nullptr);

/// Real symmetric eigendecomposition, eigenvalues ascending.
VectorXd eigh_real(const MatrixXd& a, MatrixXd* vecs = nullptr);

struct Svd {
  VectorXd s;     // singular values, descending
  MatrixXcd u;    // left singular vectors
  MatrixXcd vh;   // V^H
};

/// Full (economy) singular value decomposition.
Svd svd(const MatrixXcd& a, bool want_vectors = true);

/// Singular values only, descending.
VectorXd singular_values(const MatrixXcd& a);

/// Solve A X = B for Hermitian positive definite A (Cholesky).
MatrixXcd solve_hpd(const MatrixXcd& a, const MatrixXcd& b);

/// Solve A X = B for a general square A (partial-pivot LU).
MatrixXcd solve_lu(const MatrixXcd& a, const MatrixXcd& b);

/// Principal angles between the column spans of two orthonormal frames.
/// Returns angles in radians, ascending.
VectorXd principal_angles(const MatrixXcd& u, const MatrixXcd& v);

/// max |A_ij|.
double max_abs(const MatrixXcd& a);

}  // namespace nahmlab::linalg
