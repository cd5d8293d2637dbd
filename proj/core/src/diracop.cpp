#include "nahmlab/diracop.hpp"

#include <lapacke.h>

#include <stdexcept>

#include "nahmlab/clifford.hpp"
#include "nahmlab/detail/assembly.hpp"
#include "nahmlab/linalg.hpp"

namespace nahmlab {

using detail::PairingContext;
using detail::SymbolMatrix;

namespace {

// Quadrature fallback for fields without the structured coupling.
MatrixXcd dirac_form_quadrature(const GaugeField& a, const AnsatzSpace& sp,
                                const BallRule& rule) {
  const auto& cl = clifford_rep();
  const int r = sp.rank(), n = sp.n_scalar(), gens = sp.generator_count();
  const Chirality chi = sp.chirality();
  MatrixXcd q = MatrixXcd::Zero(gens, gens);
  const int chunk = 2048;
  MatrixXcd e(2 * r * chunk, gens);
  VectorXd mono(n);
  for (int base = 0; base < rule.size(); base += chunk) {
    const int nb = std::min(chunk, rule.size() - base);
    e.setZero();
    for (int k = 0; k < nb; ++k) {
      const Point4& x = rule.node(base + k);
      const double w = std::sqrt(rule.weight(base + k));
      for (int i = 0; i < n; ++i) {
        const MIdx& al = sp.monomials()[i];
        double v = 1.0;
        for (int d = 0; d < 4; ++d)
          for (int p = 0; p < al[d]; ++p) v *= x[d];
        mono(i) = v;
      }
      const auto pot = a.potential(x);
      for (int s = 0; s < 2; ++s)
        for (int c = 0; c < r; ++c)
          for (int i = 0; i < n; ++i) {
            const int col = (s * r + c) * n + i;
            const MIdx& al = sp.monomials()[i];
            for (int mu = 0; mu < 4; ++mu) {
              const Mat2 blk =
                  (chi == Chirality::minus) ? Mat2(-cl.sigma(mu).adjoint()) : cl.sigma(mu);
              // derivative part
              double dv = 0.0;
              if (al[mu] > 0) {
                double v = al[mu];
                for (int d = 0; d < 4; ++d) {
                  const int pow = al[d] - (d == mu ? 1 : 0);
                  for (int p = 0; p < pow; ++p) v *= x[d];
                }
                dv = v;
              }
              for (int so = 0; so < 2; ++so) {
                const cplx wblk = blk(so, s);
                if (wblk == cplx(0.0)) continue;
                e(2 * r * k + so * r + c, col) += w * wblk * dv;
                for (int co = 0; co < r; ++co)
                  e(2 * r * k + so * r + co, col) += w * wblk * pot[mu](co, c) * mono(i);
              }
            }
          }
    }
    q.noalias() += e.topRows(2 * r * nb).adjoint() * e.topRows(2 * r * nb);
  }
  return q;
}

}  // namespace

DiracForm dirac_form(const GaugeField& a, const AnsatzSpace& sp, const BallRule* rule) {
  if (a.rank() != sp.rank()) throw std::invalid_argument("dirac_form: rank mismatch");
  MatrixXcd q_gen;
  if (const auto* coup = a.coupling()) {
    const int t1deg = sp.degree() + 1 + (sp.is_bubble() ? 2 : 0);
    PairingContext ctx(t1deg, sp.radius(), coup->rho);
    const SymbolMatrix d = detail::dirac_symbol(sp.monomials(), sp.is_bubble(), sp.radius(),
                                                sp.rank(), sp.chirality(), *coup, ctx.t1());
    q_gen = ctx.pair(d, d);
  } else {
    if (!rule) throw std::invalid_argument("dirac_form: unstructured field needs a rule");
    q_gen = dirac_form_quadrature(a, sp, *rule);
  }
  DiracForm f{sp, detail::sandwich(sp.scalar_orthonormalizer(), sp.components(), q_gen,
                                   sp.scalar_orthonormalizer(), sp.components())};
  f.q = 0.5 * (f.q + f.q.adjoint().eval());
  return f;
}

GreenSolver::GreenSolver(const GaugeField& a, int bubble_degree, double R, double cond_tol)
    : field_(a), rank_(a.rank()), degree_(bubble_degree), R_(R) {
  const auto* coup = a.coupling();
  if (!coup) throw std::invalid_argument("GreenSolver: field must carry structured coupling");
  tab_ = std::make_shared<MonomialTable>(bubble_degree);

  // Scalar bubble Gram, orthonormalized once.
  const int n = tab_->size();
  MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const MIdx ab = midx_add((*tab_)[i], (*tab_)[j]);
      double v = R * R * R * R * monomial_integral(ab, R);
      for (int nu = 0; nu < 4; ++nu) {
        MIdx g1 = ab;
        g1[nu] += 2;
        v -= 2.0 * R * R * monomial_integral(g1, R);
        for (int lam = 0; lam < 4; ++lam) {
          MIdx g2 = g1;
          g2[lam] += 2;
          v += monomial_integral(g2, R);
        }
      }
      g(i, j) = g(j, i) = v;
    }
  ortho_ = spectral_orthonormalize(g, cond_tol);

  PairingContext ctx(bubble_degree + 3, R, coup->rho);
  const SymbolMatrix grad =
      detail::gradient_symbol(*tab_, true, R, rank_, *coup, ctx.t1());
  const MatrixXcd k_gen = ctx.pair(grad, grad);
  stiffness_on_ = detail::sandwich(ortho_.transform, rank_, k_gen, ortho_.transform, rank_);
  stiffness_on_ = 0.5 * (stiffness_on_ + stiffness_on_.adjoint().eval());

  stiff_min_eig_ = linalg::eigh(stiffness_on_).minCoeff();

  // Cholesky factor for repeated solves.
  chol_ = stiffness_on_;
  const lapack_int nn = lapack_int(chol_.rows());
  const lapack_int info = LAPACKE_zpotrf(LAPACK_COL_MAJOR, 'L', nn,
                                         reinterpret_cast<lapack_complex_double*>(chol_.data()),
                                         nn);
  if (info != 0) throw std::runtime_error("GreenSolver: stiffness not positive definite");
}

MatrixXcd GreenSolver::solve_scalar_blocks(const MatrixXcd& loads) const {
  MatrixXcd x = loads;
  const lapack_int n = lapack_int(chol_.rows()), nrhs = lapack_int(x.cols());
  const lapack_int info = LAPACKE_zpotrs(
      LAPACK_COL_MAJOR, 'L', n, nrhs,
      reinterpret_cast<const lapack_complex_double*>(chol_.data()), n,
      reinterpret_cast<lapack_complex_double*>(x.data()), n);
  if (info != 0) throw std::runtime_error("GreenSolver: solve failed");
  return x;
}

MatrixXd GreenSolver::scalar_load_matrix(const AnsatzSpace& v) const {
  if (v.is_bubble()) throw std::invalid_argument("scalar_load_matrix: expects a poly space");
  const int nb = tab_->size(), nv = v.n_scalar();
  const double R = R_;
  MatrixXd b(nb, nv);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nv; ++j) {
      const MIdx ab = midx_add((*tab_)[i], v.monomials()[j]);
      double val = R * R * monomial_integral(ab, R);
      for (int nu = 0; nu < 4; ++nu) {
        MIdx g1 = ab;
        g1[nu] += 2;
        val -= monomial_integral(g1, R);
      }
      b(i, j) = val;
    }
  return ortho_.transform.transpose() * b * v.scalar_orthonormalizer();
}

MatrixXcd GreenSolver::apply(const AnsatzSpace& v, const MatrixXcd& rhs) const {
  if (rhs.rows() != v.dim()) throw std::invalid_argument("GreenSolver::apply: size mismatch");
  const MatrixXd t = scalar_load_matrix(v);
  const int mv = v.m_scalar(), mb = m_scalar(), r = rank_;
  const int cols = int(rhs.cols());
  MatrixXcd out(2 * r * mb, cols);
  MatrixXcd loads(r * mb, cols);
  for (int s = 0; s < 2; ++s) {
    for (int c = 0; c < r; ++c)
      loads.middleRows(c * mb, mb).noalias() =
          t.cast<cplx>() * rhs.middleRows((s * r + c) * mv, mv);
    const MatrixXcd sol = solve_scalar_blocks(loads);
    for (int c = 0; c < r; ++c)
      out.middleRows((s * r + c) * mb, mb) = sol.middleRows(c * mb, mb);
  }
  return out;
}

MatrixXcd GreenSolver::green_gram(const AnsatzSpace& v, const MatrixXcd& u) const {
  const MatrixXcd gram = green_bilinear(v, u, u);
  return 0.5 * (gram + gram.adjoint().eval());
}

MatrixXcd GreenSolver::green_bilinear(const AnsatzSpace& v, const MatrixXcd& u,
                                      const MatrixXcd& w) const {
  const MatrixXd t = scalar_load_matrix(v);
  const int mv = v.m_scalar(), mb = m_scalar(), r = rank_;
  MatrixXcd out = MatrixXcd::Zero(u.cols(), w.cols());
  MatrixXcd lu(r * mb, u.cols()), lw(r * mb, w.cols());
  for (int s = 0; s < 2; ++s) {
    for (int c = 0; c < r; ++c) {
      lu.middleRows(c * mb, mb).noalias() = t.cast<cplx>() * u.middleRows((s * r + c) * mv, mv);
      lw.middleRows(c * mb, mb).noalias() = t.cast<cplx>() * w.middleRows((s * r + c) * mv, mv);
    }
    out.noalias() += lu.adjoint() * solve_scalar_blocks(lw);
  }
  return out;
}

const MatrixXcd& GreenSolver::dplus_load_matrix(const AnsatzSpace& v) const {
  const auto it = dplus_loads_.find(v.degree());
  if (it != dplus_loads_.end()) return it->second;
  const auto* coup = field_.coupling();
  PairingContext ctx(std::max(degree_ + 3, v.degree() + 1), R_, coup->rho);
  const SymbolMatrix dp =
      detail::dirac_symbol(*tab_, true, R_, rank_, Chirality::plus, *coup, ctx.t1());
  const SymbolMatrix emb = detail::embed_symbol(v.monomials(), false, R_, 2 * rank_, ctx.t1());
  const MatrixXcd l_gen = ctx.pair(dp, emb);
  return dplus_loads_[v.degree()] = detail::sandwich(
             ortho_.transform, 2 * rank_, l_gen, v.scalar_orthonormalizer(), 2 * rank_);
}

GreenSolver::DplusSolve GreenSolver::dplus_solve(const AnsatzSpace& v,
                                                 const MatrixXcd& rhs) const {
  if (v.chirality() != Chirality::minus)
    throw std::invalid_argument("dplus_solve: rhs must be negative-chirality");
  const MatrixXcd& l = dplus_load_matrix(v);
  const MatrixXcd lc = l * rhs;  // (2r*mb) x cols
  const int r = rank_, mb = m_scalar();
  const int cols = int(rhs.cols());
  DplusSolve out;
  out.coeffs.resize(2 * r * mb, cols);
  for (int s = 0; s < 2; ++s)
    out.coeffs.middleRows(s * r * mb, r * mb) =
        solve_scalar_blocks(lc.middleRows(s * r * mb, r * mb));
  out.residual.resize(cols);
  for (int j = 0; j < cols; ++j) {
    const double rhs2 = rhs.col(j).squaredNorm();
    const double fit = std::real(out.coeffs.col(j).dot(lc.col(j)));
    out.residual(j) = std::sqrt(std::max(0.0, rhs2 - fit)) / std::sqrt(rhs2);
  }
  return out;
}

VectorXcd GreenSolver::evaluate(const VectorXcd& coeffs, const Point4& x) const {
  const int mb = m_scalar(), r = rank_, n = tab_->size();
  VectorXd mono(n);
  for (int i = 0; i < n; ++i) {
    const MIdx& a = (*tab_)[i];
    double v = 1.0;
    for (int d = 0; d < 4; ++d)
      for (int p = 0; p < a[d]; ++p) v *= x[d];
    mono(i) = v;
  }
  mono *= (R_ * R_ - x.norm2());
  const VectorXd basis_vals = ortho_.transform.transpose() * mono;
  VectorXcd val(2 * r);
  for (int c = 0; c < 2 * r; ++c)
    val(c) = (coeffs.segment(c * mb, mb).array() * basis_vals.array().cast<cplx>()).sum();
  return val;
}

MatrixXcd GreenSolver::dplus_gram_spinor() const {
  const auto* coup = field_.coupling();
  PairingContext ctx(degree_ + 3, R_, coup->rho);
  const SymbolMatrix dp =
      detail::dirac_symbol(*tab_, true, R_, rank_, Chirality::plus, *coup, ctx.t1());
  const MatrixXcd g = ctx.pair(dp, dp);
  return detail::sandwich(ortho_.transform, 2 * rank_, g, ortho_.transform, 2 * rank_);
}

MatrixXcd GreenSolver::stiffness_spinor() const {
  const int d = int(stiffness_on_.rows());
  MatrixXcd out = MatrixXcd::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = stiffness_on_;
  out.bottomRightCorner(d, d) = stiffness_on_;
  return out;
}

double flat_green_closed(const Point4& p, const Point4& q, double R) {
  const double d2 = (p - q).norm2();
  if (d2 == 0.0) throw std::invalid_argument("flat_green_closed: coincident points");
  if (q.norm2() == 0.0)
    return (1.0 / p.norm2() - 1.0 / (R * R)) / (4.0 * kPi * kPi);
  if (p.norm2() == 0.0)
    return (1.0 / q.norm2() - 1.0 / (R * R)) / (4.0 * kPi * kPi);
  const double qn = q.norm();
  const Point4 img = p * (qn / R) - q * (R / qn);
  return (1.0 / d2 - 1.0 / img.norm2()) / (4.0 * kPi * kPi);
}

VectorXcd evaluate_field(const AnsatzSpace& space, const VectorXcd& on_coeffs, const Point4& x) {
  return space.evaluate(on_coeffs, x);
}

}  // namespace nahmlab
