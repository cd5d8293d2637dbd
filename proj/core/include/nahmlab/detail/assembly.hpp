#pragma once

#include <Eigen/SparseCore>

#include "nahmlab/ansatz.hpp"
#include "nahmlab/gauge.hpp"
#include "nahmlab/moments.hpp"
#include "nahmlab/multiindex.hpp"
#include "nahmlab/types.hpp"

namespace nahmlab::detail {

using SpMat = Eigen::SparseMatrix<cplx>;

/// Symbolic image of a generator family under a first-order operator, written
/// over a common monomial table t1 with weights 1 and 1/(|x|^2+rho^2):
///   (op g_j)(x) = sum_comp sum_t [ part0[comp](t,j) + part1[comp](t,j)/q ] x^t e_comp.
/// Row blocks are indexed by an operator-dependent component (spin/color or
/// derivative direction/color); columns are generator-level.
struct SymbolMatrix {
  int n1 = 0;
  int cols = 0;
  std::vector<SpMat> part0;  // one (n1 x cols) block per component
  std::vector<SpMat> part1;  // empty when there is no rational part
};

/// L^2 pairing engine over the ball: dense moment matrices for weights
/// 1, 1/q, 1/q^2 on the product table, combined with sparse symbols.
class PairingContext {
 public:
  PairingContext(int t1_degree, double R, double rho);

  const MonomialTable& t1() const { return t1_; }
  double radius() const { return R_; }
  double rho() const { return rho_; }

  /// Gram matrix <a_i, b_j> at generator level (a.cols x b.cols).
  MatrixXcd pair(const SymbolMatrix& a, const SymbolMatrix& b) const;

 private:
  const MatrixXd& mom(int k) const;

  MonomialTable t1_;
  double R_, rho_;
  MatrixXd mom_[3];
};

/// D_A applied to the monomial-spinor generators of a polynomial or bubble
/// space: chi_in = minus gives D^- (S- to S+), plus gives D^+ (S+ to S-).
SymbolMatrix dirac_symbol(const MonomialTable& tab, bool bubble, double R, int rank,
                          Chirality chi_in, const RationalCoupling& coup,
                          const MonomialTable& t1);

/// Covariant gradient of scalar (color-valued) generators; component blocks
/// are (mu*rank + color).
SymbolMatrix gradient_symbol(const MonomialTable& tab, bool bubble, double R, int rank,
                             const RationalCoupling& coup, const MonomialTable& t1);

/// Identity embedding of generators with ncomp components into t1, optionally
/// multiplied by a polynomial given as monomial terms.
struct PolyTerm {
  double coeff;
  MIdx mono;
};
SymbolMatrix embed_symbol(const MonomialTable& tab, bool bubble, double R, int ncomp,
                          const MonomialTable& t1,
                          const std::vector<PolyTerm>& factor = {{1.0, {0, 0, 0, 0}}});

/// Q_on = blockdiag(Oa)^T Q_gen blockdiag(Ob), with ncomp blocks per side.
MatrixXcd sandwich(const MatrixXd& oa, int ncomp_a, const MatrixXcd& q_gen, const MatrixXd& ob,
                   int ncomp_b);

/// (I_ncomp (x) s) * coeffs for component-major coefficient columns.
MatrixXcd kron_apply(const MatrixXcd& s, int ncomp, const MatrixXcd& coeffs);

}  // namespace nahmlab::detail
