#include "nahmlab/nahm.hpp"

#include <limits>
#include <stdexcept>

#include "nahmlab/clifford.hpp"
#include "nahmlab/errors.hpp"
#include "nahmlab/linalg.hpp"

namespace nahmlab {

namespace {

// chat_mu: the S- -> S+ block of c_mu.
Mat2 chat(int mu) { return -clifford_rep().sigma(mu).adjoint(); }

// Apply a 2x2 spin matrix to the spin-major blocks of a (2m x k) matrix.
MatrixXcd apply_spin(const Mat2& s, const MatrixXcd& v) {
  const int m = int(v.rows()) / 2;
  MatrixXcd out(v.rows(), v.cols());
  out.topRows(m) = s(0, 0) * v.topRows(m) + s(0, 1) * v.bottomRows(m);
  out.bottomRows(m) = s(1, 0) * v.topRows(m) + s(1, 1) * v.bottomRows(m);
  return out;
}

}  // namespace

MatrixXcd dirac_hat(const ADHMData& d, const Point4& y) {
  const int m = int(d.x[0].rows());
  MatrixXcd t = MatrixXcd::Zero(2 * m, 2 * m);
  for (int mu = 0; mu < 4; ++mu) {
    const MatrixXcd a = d.x[mu] - y[mu] * MatrixXcd::Identity(m, m);
    const Mat2 c = cplx(0.0, -2.0 * kPi) * chat(mu);
    for (int so = 0; so < 2; ++so)
      for (int si = 0; si < 2; ++si)
        if (c(so, si) != cplx(0.0)) t.block(so * m, si * m, m, m) += c(so, si) * a;
  }
  return t;
}

FiberData fiber(const BergmannSpace& b, const ADHMData& d, const Point4& y,
                double eps_ker_rel) {
  const MatrixXcd t = dirac_hat(d, y);
  const auto sv = linalg::svd(t);
  const int n = int(sv.s.size());
  VectorXd asc(n);
  for (int i = 0; i < n; ++i) asc(i) = sv.s(n - 1 - i);
  const double smax = sv.s(0);
  int kept = 0;
  while (kept < n && asc(kept) <= eps_ker_rel * smax) ++kept;
  FiberData out;
  out.y = y;
  out.singulars = asc;
  out.eps_ker = eps_ker_rel;
  if (smax <= 1e-300) {
    // degenerate data (all position operators vanish): flag the whole space
    out.basis = MatrixXcd::Identity(n, n);
    out.gap = std::numeric_limits<double>::infinity();
    return out;
  }
  if (kept == 0) {
    out.basis = MatrixXcd(n, 0);
    out.gap = asc(0) / (eps_ker_rel * smax);
    return out;
  }
  const double last_kept = std::max(asc(kept - 1), 1e-14 * smax);
  out.gap = (kept < n ? asc(kept) : smax) / last_kept;
  if (out.gap < 1e2) throw GapError("fiber: no singular-value gap at eps_ker");
  // Truncation-edge ghosts appear only inside the numerically-zero cohort
  // (they are exact nulls of the square finite section, degenerate with the
  // kernel at y = 0); sigma-resolved kernel members are kept unconditionally.
  int zero_cnt = 0;
  while (zero_cnt < kept && asc(zero_cnt) <= 1e-12 * smax) ++zero_cnt;
  MatrixXcd frame = sv.vh.adjoint().rightCols(kept);
  if (zero_cnt > 0) {
    const EdgeSplit split =
        split_edge_modes(b, MatrixXcd(frame.rightCols(zero_cnt)));
    out.n_edge = split.n_edge;
    MatrixXcd basis(frame.rows(), kept - split.n_edge);
    basis.leftCols(kept - zero_cnt) = frame.leftCols(kept - zero_cnt);
    basis.rightCols(split.clean.cols()) = split.clean;
    out.basis = std::move(basis);
  } else {
    out.basis = std::move(frame);
  }
  return out;
}

MatrixXcd projector_hat(const ADHMData& d, const Point4& y) {
  const int m = int(d.x[0].rows());
  MatrixXcd lap = MatrixXcd::Zero(m, m);
  for (int mu = 0; mu < 4; ++mu) {
    const MatrixXcd a = d.x[mu] - y[mu] * MatrixXcd::Identity(m, m);
    lap.noalias() += a * a;
  }
  lap *= 4.0 * kPi * kPi;
  const MatrixXcd t = dirac_hat(d, y);
  // (Ghat (x) 1) T: solve per spin block of the codomain factor
  MatrixXcd gt(2 * m, 2 * m);
  gt.topRows(m) = linalg::solve_lu(lap, MatrixXcd(t.topRows(m)));
  gt.bottomRows(m) = linalg::solve_lu(lap, MatrixXcd(t.bottomRows(m)));
  MatrixXcd p = MatrixXcd::Identity(2 * m, 2 * m) - t.adjoint() * gt;
  return 0.5 * (p + p.adjoint().eval());
}

std::array<MatrixXcd, 6> curvature_hat(const ADHMData& d) {
  std::array<MatrixXcd, 6> f;
  for (int p = 0; p < 6; ++p) {
    const auto [mu, nu] = kPairOrder[p];
    f[p] = -4.0 * kPi * kPi * (d.x[mu] * d.x[nu] - d.x[nu] * d.x[mu]);
  }
  return f;
}

std::array<MatrixXcd, 6> curvature_hat_green(const BergmannSpace& b, const GreenSolver& solver) {
  const auto& cl = clifford_rep();
  std::array<MatrixXcd, 6> f;
  const int r = b.rank(), mv = b.space.m_scalar();
  for (int p = 0; p < 6; ++p) {
    const auto [mu, nu] = kPairOrder[p];
    // (c_mu c_nu - c_nu c_mu) restricted to S- equals -4 sigma-bar_{mu nu}.
    const Mat2 s = -4.0 * cl.form_minus(mu, nu);
    MatrixXcd sb(b.space.dim(), b.dim());
    for (int so = 0; so < 2; ++so)
      sb.middleRows(so * r * mv, r * mv) = s(so, 0) * b.basis.middleRows(0, r * mv) +
                                           s(so, 1) * b.basis.middleRows(r * mv, r * mv);
    f[p] = 4.0 * kPi * kPi * solver.green_bilinear(b.space, sb, b.basis);
  }
  return f;
}

double asd_residual_components(const std::array<MatrixXcd, 6>& f) {
  const MatrixXcd g1 = f[3] - f[2];
  const MatrixXcd g2 = -(f[1] + f[4]);
  const MatrixXcd g3 = f[0] - f[5];
  return std::sqrt(0.5 * (g1.squaredNorm() + g2.squaredNorm() + g3.squaredNorm()));
}

double curvature_norm(const std::array<MatrixXcd, 6>& f) {
  double s = 0.0;
  for (const auto& m : f) s += m.squaredNorm();
  return std::sqrt(s);
}

std::array<MatrixXcd, 6> curvature_double_hat(const ADHMData& d, const Point4& y,
                                              const FiberData& fib) {
  const auto& cl = clifford_rep();
  const int m = int(d.x[0].rows());
  MatrixXcd lap = MatrixXcd::Zero(m, m);
  for (int mu = 0; mu < 4; ++mu) {
    const MatrixXcd a = d.x[mu] - y[mu] * MatrixXcd::Identity(m, m);
    lap.noalias() += a * a;
  }
  lap *= 4.0 * kPi * kPi;
  // Ghat on the Bergmann factor of the fiber frame.
  MatrixXcd gw(2 * m, fib.dim());
  gw.topRows(m) = linalg::solve_lu(lap, MatrixXcd(fib.basis.topRows(m)));
  gw.bottomRows(m) = linalg::solve_lu(lap, MatrixXcd(fib.basis.bottomRows(m)));
  std::array<MatrixXcd, 6> f;
  for (int p = 0; p < 6; ++p) {
    const auto [mu, nu] = kPairOrder[p];
    // (chat_mu chat_nu - chat_nu chat_mu) on S- equals -4 sigma-bar_{mu nu}.
    const Mat2 s = -4.0 * cl.form_minus(mu, nu);
    const MatrixXcd m6 = -4.0 * kPi * kPi * (fib.basis.adjoint() * apply_spin(s, gw));
    // curvature components take values in the anti-Hermitian endomorphisms
    f[p] = 0.5 * (m6 - m6.adjoint().eval());
  }
  return f;
}

GreenAppliedBasis::GreenAppliedBasis(const BergmannSpace& b, const GreenSolver& solver)
    : b_(&b), solver_(&solver) {
  coeffs_ = solver.apply(b.space, b.basis);
}

MatrixXcd GreenAppliedBasis::eval(const Point4& x) const {
  const int nc = 2 * solver_->rank();
  const int mb = solver_->m_scalar();
  const MonomialTable& tab = solver_->bubble_monomials();
  VectorXd mono(tab.size());
  for (int i = 0; i < tab.size(); ++i) {
    const MIdx& a = tab[i];
    double v = 1.0;
    for (int d = 0; d < 4; ++d)
      for (int p = 0; p < a[d]; ++p) v *= x[d];
    mono(i) = v;
  }
  mono *= (solver_->radius() * solver_->radius() - x.norm2());
  const VectorXd bas = solver_->bubble_orthonormalizer().transpose() * mono;
  MatrixXcd vals(nc, coeffs_.cols());
  for (int c = 0; c < nc; ++c)
    vals.row(c) = bas.cast<cplx>().transpose() * coeffs_.middleRows(c * mb, mb);
  return vals;
}

ReconstructionFiber canonical_map(const GreenAppliedBasis& gb, const Point4& y) {
  const int r = gb.rank();
  const int m = gb.space().dim();
  const MatrixXcd g = gb.eval(y);  // (2r) x m
  ReconstructionFiber out;
  out.y = y;
  out.alpha.resize(2 * m, r);
  // alpha(e_a) = 4 pi sum_j sigma_j (x) eps(spin pair of (G0 sigma_j)(y)[a,:]).
  for (int a = 0; a < r; ++a)
    for (int j = 0; j < m; ++j) {
      const cplx v1 = g(0 * r + a, j), v2 = g(1 * r + a, j);
      out.alpha(0 * m + j, a) = 4.0 * kPi * (-std::conj(v2));
      out.alpha(1 * m + j, a) = 4.0 * kPi * std::conj(v1);
    }
  out.gram = out.alpha.adjoint() * out.alpha;
  return out;
}

MatrixXcd correlator(const GreenAppliedBasis& gb, const Point4& x1, const Point4& x2) {
  if ((x1 - x2).norm2() == 0.0) throw std::invalid_argument("correlator: coincident points");
  const int r = gb.rank();
  const MatrixXcd g1 = gb.eval(x1), g2 = gb.eval(x2);
  MatrixXcd corr = MatrixXcd::Zero(r, r);
  const double c = 16.0 * kPi * kPi;
  for (int a = 0; a < r; ++a)
    for (int bb = 0; bb < r; ++bb) {
      cplx s = 0.0;
      for (int j = 0; j < g1.cols(); ++j) {
        // v_x[j, spin, color] components via eps of the spin pair
        const cplx a1 = -std::conj(g1(r + a, j)), a2 = std::conj(g1(a, j));
        const cplx b1 = -std::conj(g2(r + bb, j)), b2 = std::conj(g2(bb, j));
        s += std::conj(a1) * b1 + std::conj(a2) * b2;
      }
      corr(a, bb) = c * s;
    }
  return corr;
}

}  // namespace nahmlab
