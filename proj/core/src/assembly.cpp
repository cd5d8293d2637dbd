#include "nahmlab/detail/assembly.hpp"

#include <stdexcept>

#include "nahmlab/clifford.hpp"

namespace nahmlab::detail {

PairingContext::PairingContext(int t1_degree, double R, double rho)
    : t1_(t1_degree), R_(R), rho_(rho) {
  const int n = t1_.size();
  const bool rational = rho > 0.0;
  RadialRationalTable rad;
  if (rational) rad = RadialRationalTable(rho, R, 2 * t1_degree + 4);
  const int kmax = rational ? 2 : 0;
  for (int k = 0; k <= kmax; ++k) mom_[k].resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const MIdx g = midx_add(t1_[i], t1_[j]);
      mom_[0](i, j) = mom_[0](j, i) = monomial_integral(g, R);
      if (rational) {
        mom_[1](i, j) = mom_[1](j, i) = rad.ball_moment(g, 1);
        mom_[2](i, j) = mom_[2](j, i) = rad.ball_moment(g, 2);
      }
    }
}

const MatrixXd& PairingContext::mom(int k) const {
  if (mom_[k].size() == 0) throw std::logic_error("PairingContext: missing rational moments");
  return mom_[k];
}

namespace {

// y += m * b with m real dense and b sparse complex.
void add_mat_times_sparse(const MatrixXd& m, const SpMat& b, MatrixXcd& y) {
  for (int j = 0; j < b.outerSize(); ++j)
    for (SpMat::InnerIterator it(b, j); it; ++it)
      y.col(j) += it.value() * m.col(it.row()).cast<cplx>();
}

}  // namespace

MatrixXcd PairingContext::pair(const SymbolMatrix& a, const SymbolMatrix& b) const {
  if (a.part0.size() != b.part0.size())
    throw std::invalid_argument("PairingContext::pair: component mismatch");
  const int ncomp = int(a.part0.size());
  MatrixXcd out = MatrixXcd::Zero(a.cols, b.cols);
  const bool a1 = !a.part1.empty(), b1 = !b.part1.empty();
  for (int c = 0; c < ncomp; ++c) {
    for (int p = 0; p < (a1 ? 2 : 1); ++p) {
      const SpMat& ap = (p == 0) ? a.part0[c] : a.part1[c];
      if (ap.nonZeros() == 0) continue;
      for (int q = 0; q < (b1 ? 2 : 1); ++q) {
        const SpMat& bq = (q == 0) ? b.part0[c] : b.part1[c];
        if (bq.nonZeros() == 0) continue;
        MatrixXcd y = MatrixXcd::Zero(a.n1, b.cols);
        add_mat_times_sparse(mom(p + q), bq, y);
        out.noalias() += ap.adjoint() * y;
      }
    }
  }
  return out;
}

namespace {

struct TermSink {
  std::vector<Eigen::Triplet<cplx>>* t0;
  std::vector<Eigen::Triplet<cplx>>* t1;
  const MonomialTable* t1tab;
  int col = 0;

  void add(const MIdx& g, cplx v, int qpow) {
    if (v == cplx(0.0)) return;
    const int row = t1tab->find(g);
    if (row < 0) throw std::logic_error("assembly: t1 table too small");
    (qpow == 0 ? t0 : t1)->emplace_back(row, col, v);
  }
};

// Terms of d_mu applied to x^a or (R^2-r^2) x^a.
void derivative_terms(const MIdx& a, int mu, bool bubble, double R, TermSink& sink, cplx scale) {
  if (a[mu] > 0) {
    MIdx d = a;
    d[mu] -= 1;
    if (!bubble) {
      sink.add(d, scale * double(a[mu]), 0);
    } else {
      sink.add(d, scale * double(a[mu]) * R * R, 0);
      for (int nu = 0; nu < 4; ++nu) {
        MIdx g = d;
        g[nu] += 2;
        sink.add(g, -scale * double(a[mu]), 0);
      }
    }
  }
  if (bubble) {
    MIdx g = a;
    g[mu] += 1;
    sink.add(g, -2.0 * scale, 0);
  }
}

// Terms of multiplication by x^b or (R^2-r^2) x^b against weight q^{-qpow_in};
// for bubbles the identity (R^2-r^2)/q = (R^2+rho^2)/q - 1 keeps the q-power <= 1.
void value_terms(const MIdx& a, bool bubble, double R, double rho, TermSink& sink, cplx scale,
                 int qpow) {
  if (!bubble) {
    sink.add(a, scale, qpow);
    return;
  }
  if (qpow == 0) {
    sink.add(a, scale * R * R, 0);
    for (int nu = 0; nu < 4; ++nu) {
      MIdx g = a;
      g[nu] += 2;
      sink.add(g, -scale, 0);
    }
  } else {
    sink.add(a, scale * (R * R + rho * rho), 1);
    sink.add(a, -scale, 0);
  }
}

SymbolMatrix finish(int ncomp_out, int n1, int cols,
                    std::vector<std::vector<Eigen::Triplet<cplx>>>& t0,
                    std::vector<std::vector<Eigen::Triplet<cplx>>>& t1, bool rational) {
  SymbolMatrix s;
  s.n1 = n1;
  s.cols = cols;
  s.part0.resize(ncomp_out);
  for (int c = 0; c < ncomp_out; ++c) {
    s.part0[c].resize(n1, cols);
    s.part0[c].setFromTriplets(t0[c].begin(), t0[c].end());
  }
  if (rational) {
    s.part1.resize(ncomp_out);
    for (int c = 0; c < ncomp_out; ++c) {
      s.part1[c].resize(n1, cols);
      s.part1[c].setFromTriplets(t1[c].begin(), t1[c].end());
    }
  }
  return s;
}

}  // namespace

SymbolMatrix dirac_symbol(const MonomialTable& tab, bool bubble, double R, int rank,
                          Chirality chi_in, const RationalCoupling& coup,
                          const MonomialTable& t1) {
  const auto& cl = clifford_rep();
  const int n = tab.size(), ncomp = 2 * rank;
  const bool rational = coup.rho > 0.0;
  const int cols = ncomp * n;
  std::vector<std::vector<Eigen::Triplet<cplx>>> t0(ncomp), t1trip(ncomp);
  TermSink sink{nullptr, nullptr, &t1, 0};

  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < rank; ++c)
      for (int i = 0; i < n; ++i) {
        const int col = (s * rank + c) * n + i;
        const MIdx& a = tab[i];
        for (int mu = 0; mu < 4; ++mu) {
          // Spin block of c_mu for the chosen chirality.
          const Mat2 blk = (chi_in == Chirality::minus) ? Mat2(-cl.sigma(mu).adjoint())
                                                        : cl.sigma(mu);
          for (int so = 0; so < 2; ++so) {
            const cplx w = blk(so, s);
            if (w == cplx(0.0)) continue;
            // flat derivative, color-diagonal
            sink.t0 = &t0[so * rank + c];
            sink.t1 = &t1trip[so * rank + c];
            sink.col = col;
            derivative_terms(a, mu, bubble, R, sink, w);
            // coupling A_mu = (C_mu_lam x_lam)/q + Z_mu
            for (int co = 0; co < rank; ++co) {
              sink.t0 = &t0[so * rank + co];
              sink.t1 = &t1trip[so * rank + co];
              const cplx z = coup.Z[mu](co, c);
              if (z != cplx(0.0)) value_terms(a, bubble, R, coup.rho, sink, w * z, 0);
              if (rational)
                for (int lam = 0; lam < 4; ++lam) {
                  const cplx cc = coup.C[mu][lam](co, c);
                  if (cc == cplx(0.0)) continue;
                  MIdx g = a;
                  g[lam] += 1;
                  value_terms(g, bubble, R, coup.rho, sink, w * cc, 1);
                }
            }
          }
        }
      }
  return finish(ncomp, t1.size(), cols, t0, t1trip, rational);
}

SymbolMatrix gradient_symbol(const MonomialTable& tab, bool bubble, double R, int rank,
                             const RationalCoupling& coup, const MonomialTable& t1) {
  const int n = tab.size();
  const bool rational = coup.rho > 0.0;
  const int ncomp_out = 4 * rank, cols = rank * n;
  std::vector<std::vector<Eigen::Triplet<cplx>>> t0(ncomp_out), t1trip(ncomp_out);
  TermSink sink{nullptr, nullptr, &t1, 0};

  for (int c = 0; c < rank; ++c)
    for (int i = 0; i < n; ++i) {
      const int col = c * n + i;
      const MIdx& a = tab[i];
      for (int mu = 0; mu < 4; ++mu) {
        sink.t0 = &t0[mu * rank + c];
        sink.t1 = &t1trip[mu * rank + c];
        sink.col = col;
        derivative_terms(a, mu, bubble, R, sink, 1.0);
        for (int co = 0; co < rank; ++co) {
          sink.t0 = &t0[mu * rank + co];
          sink.t1 = &t1trip[mu * rank + co];
          const cplx z = coup.Z[mu](co, c);
          if (z != cplx(0.0)) value_terms(a, bubble, R, coup.rho, sink, z, 0);
          if (rational)
            for (int lam = 0; lam < 4; ++lam) {
              const cplx cc = coup.C[mu][lam](co, c);
              if (cc == cplx(0.0)) continue;
              MIdx g = a;
              g[lam] += 1;
              value_terms(g, bubble, R, coup.rho, sink, cc, 1);
            }
        }
      }
    }
  return finish(ncomp_out, t1.size(), cols, t0, t1trip, rational);
}

SymbolMatrix embed_symbol(const MonomialTable& tab, bool bubble, double R, int ncomp,
                          const MonomialTable& t1, const std::vector<PolyTerm>& factor) {
  const int n = tab.size();
  std::vector<std::vector<Eigen::Triplet<cplx>>> t0(ncomp), t1trip(ncomp);
  TermSink sink{nullptr, nullptr, &t1, 0};
  for (int c = 0; c < ncomp; ++c)
    for (int i = 0; i < n; ++i) {
      sink.t0 = &t0[c];
      sink.t1 = &t1trip[c];
      sink.col = c * n + i;
      for (const auto& f : factor)
        value_terms(midx_add(tab[i], f.mono), bubble, R, 0.0, sink, f.coeff, 0);
    }
  return finish(ncomp, t1.size(), ncomp * n, t0, t1trip, false);
}

MatrixXcd sandwich(const MatrixXd& oa, int ncomp_a, const MatrixXcd& q_gen, const MatrixXd& ob,
                   int ncomp_b) {
  const int na = int(oa.rows()), ma = int(oa.cols());
  const int nb = int(ob.rows()), mb = int(ob.cols());
  MatrixXcd out(ncomp_a * ma, ncomp_b * mb);
  const MatrixXcd oac = oa.cast<cplx>(), obc = ob.cast<cplx>();
  for (int ca = 0; ca < ncomp_a; ++ca)
    for (int cb = 0; cb < ncomp_b; ++cb)
      out.block(ca * ma, cb * mb, ma, mb).noalias() =
          oac.adjoint() * q_gen.block(ca * na, cb * nb, na, nb) * obc;
  return out;
}

MatrixXcd kron_apply(const MatrixXcd& s, int ncomp, const MatrixXcd& coeffs) {
  const int m = int(s.rows());
  if (coeffs.rows() != ncomp * m) throw std::invalid_argument("kron_apply: size mismatch");
  MatrixXcd out(coeffs.rows(), coeffs.cols());
  for (int c = 0; c < ncomp; ++c)
    out.middleRows(c * m, m).noalias() = s * coeffs.middleRows(c * m, m);
  return out;
}

}  // namespace nahmlab::detail
