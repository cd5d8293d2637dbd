#include "nahmlab/bergmann.hpp"

#include <limits>
#include <stdexcept>

#include "nahmlab/errors.hpp"

#include "nahmlab/detail/assembly.hpp"
#include "nahmlab/linalg.hpp"

namespace nahmlab {

BergmannSpace compute_bergmann(const GaugeField& a, int degree, double R, double eps_null_rel,
                               const BallRule* rule, double cond_tol, double gap_min) {
  const AnsatzSpace v = AnsatzSpace::poly(degree, a.rank(), Chirality::minus, R, cond_tol);
  const DiracForm form = dirac_form(a, v, rule);

  MatrixXcd vecs;
  const VectorXd mu = linalg::eigh(form.q, &vecs);
  const int dim = int(mu.size());
  const double qn = std::max(mu(dim - 1), 0.0);
  if (qn <= 1e-12 / (R * R)) {
    // The form vanishes identically: the whole trial space is Dirac-null.
    return BergmannSpace{v,  vecs, mu, eps_null_rel, std::numeric_limits<double>::infinity(),
                         qn, 0.0, a.kind()};
  }

  int kept = 0;
  while (kept < dim && mu(kept) <= eps_null_rel * qn) ++kept;
  if (kept == 0)
    throw GapError("compute_bergmann: no null cluster at eps_null (resolution too low)");
  if (kept == dim)
    throw GapError("compute_bergmann: threshold swallows the whole space");

  const double last_kept = std::max(mu(kept - 1), 1e-14 * qn);
  const double first_dropped = mu(kept);
  const double gap = first_dropped / last_kept;
  if (gap < gap_min)
    throw GapError(
        "compute_bergmann: no spectral gap at eps_null (resolution too low - raise N or "
        "quadrature)");

  return BergmannSpace{v,   MatrixXcd(vecs.leftCols(kept)), VectorXd(mu.head(kept)),
                       eps_null_rel, gap, qn, first_dropped, a.kind()};
}

MatrixXd toeplitz_scalar(const AnsatzSpace& v, const std::vector<MonoTerm>& f) {
  const MonomialTable& tab = v.monomials();
  const int n = tab.size();
  MatrixXd m = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (const auto& t : f)
        s += t.coeff * monomial_integral(midx_add(midx_add(tab[i], tab[j]), t.mono), v.radius());
      m(i, j) = s;
      m(j, i) = s;
    }
  return v.scalar_orthonormalizer().transpose() * m * v.scalar_orthonormalizer();
}

MatrixXcd toeplitz_poly(const BergmannSpace& b, const std::vector<MonoTerm>& f) {
  const MatrixXcd s = toeplitz_scalar(b.space, f).cast<cplx>();
  const MatrixXcd t =
      b.basis.adjoint() * detail::kron_apply(s, b.space.components(), b.basis);
  return 0.5 * (t + t.adjoint().eval());
}

ADHMData position_ops(const BergmannSpace& b) {
  ADHMData d;
  d.degree = b.degree();
  d.kind = b.kind;
  d.eps_null = b.eps_null;
  for (int mu = 0; mu < 4; ++mu) {
    MIdx e{0, 0, 0, 0};
    e[mu] = 1;
    d.x[mu] = toeplitz_poly(b, {{1.0, e}});
  }
  return d;
}

std::array<double, 3> adhm_residual(const ADHMData& d) {
  auto comm = [](const MatrixXcd& a, const MatrixXcd& b) { return a * b - b * a; };
  const MatrixXcd e1 = comm(d.x[0], d.x[1]) - comm(d.x[2], d.x[3]);
  const MatrixXcd e2 = comm(d.x[0], d.x[2]) + comm(d.x[1], d.x[3]);
  const MatrixXcd e3 = comm(d.x[1], d.x[2]) - comm(d.x[0], d.x[3]);
  double denom = 0.0;
  for (const auto& x : d.x) denom += x.squaredNorm();
  if (denom == 0.0) return {0.0, 0.0, 0.0};
  return {std::sqrt(e1.squaredNorm()) / denom, std::sqrt(e2.squaredNorm()) / denom,
          std::sqrt(e3.squaredNorm()) / denom};
}

SpectrumReport oscillator(const BergmannSpace& b) {
  const double R = b.radius();
  std::vector<MonoTerm> r2;
  for (int nu = 0; nu < 4; ++nu) {
    MIdx e{0, 0, 0, 0};
    e[nu] = 2;
    r2.push_back({1.0 / (2.0 * R * R), e});
  }
  const MatrixXcd h = toeplitz_poly(b, r2);
  SpectrumReport rep;
  rep.radius = R;
  MatrixXcd vecs;
  rep.eigenvalues = linalg::eigh(h, &vecs);
  rep.vectors = std::move(vecs);
  rep.states.resize(rep.eigenvalues.size());
  for (int k = 0; k < rep.eigenvalues.size(); ++k) {
    rep.states[k].half_lambda_sq = rep.eigenvalues(k);
    rep.states[k].lambda = std::sqrt(std::max(0.0, 2.0 * rep.eigenvalues(k)));
  }
  return rep;
}

std::vector<ZetaReport> eigenstate_zeta_all(const BergmannSpace& b, const GreenSolver& solver,
                                            const SpectrumReport& rep,
                                            const std::vector<int>& which) {
  std::vector<int> sel = which;
  if (sel.empty())
    for (int k = 0; k < rep.eigenvalues.size(); ++k) sel.push_back(k);
  const double R = b.radius();
  const AnsatzSpace& v = b.space;
  // Multiplication by |x|^2 raises the degree by two, so the right-hand sides
  // live in the degree N+2 parent space.
  const AnsatzSpace vbig =
      AnsatzSpace::poly(v.degree() + 2, v.rank(), Chirality::minus, R, v.cond_tol());
  const int nc = v.components(), ns = v.n_scalar(), nbig = vbig.n_scalar();
  const int mbig = vbig.m_scalar();

  // Injection indices of V_N monomials and their |x|^2-shifts into vbig.
  std::vector<int> inj(ns);
  std::array<std::vector<int>, 4> inj2;
  for (int nu = 0; nu < 4; ++nu) inj2[nu].resize(ns);
  for (int i = 0; i < ns; ++i) {
    inj[i] = vbig.monomials().find(v.monomials()[i]);
    for (int nu = 0; nu < 4; ++nu) {
      MIdx g = v.monomials()[i];
      g[nu] += 2;
      inj2[nu][i] = vbig.monomials().find(g);
    }
  }
  const MatrixXd og = vbig.scalar_orthonormalizer().transpose() * vbig.scalar_gram();

  MatrixXcd rhs_on(nc * mbig, int(sel.size()));
  for (size_t col = 0; col < sel.size(); ++col) {
    const int k = sel[col];
    const double ev = rep.eigenvalues(k);
    const VectorXcd gen_small = v.to_generators(b.basis * rep.vectors.col(k));
    VectorXcd rhs_gen = VectorXcd::Zero(nc * nbig);
    for (int c = 0; c < nc; ++c)
      for (int i = 0; i < ns; ++i) {
        const cplx val = gen_small(c * ns + i);
        if (val == cplx(0.0)) continue;
        for (int nu = 0; nu < 4; ++nu)
          rhs_gen(c * nbig + inj2[nu][i]) += val / (2.0 * R * R);
        rhs_gen(c * nbig + inj[i]) -= ev * val;
      }
    for (int c = 0; c < nc; ++c)
      rhs_on.col(col).segment(c * mbig, mbig) = og.cast<cplx>() * rhs_gen.segment(c * nbig, nbig);
  }

  const auto sol = solver.dplus_solve(vbig, rhs_on);
  std::vector<ZetaReport> out(sel.size());
  for (size_t col = 0; col < sel.size(); ++col) {
    out[col].coeffs = sol.coeffs.col(col);
    out[col].residual = sol.residual(col);
    out[col].grad_sq = std::real(
        (out[col].coeffs.adjoint() * detail::kron_apply(solver.stiffness(), 2, out[col].coeffs))(
            0, 0));
  }
  return out;
}

ZetaReport eigenstate_zeta(const BergmannSpace& b, const GreenSolver& solver,
                           const SpectrumReport& rep, int k) {
  return eigenstate_zeta_all(b, solver, rep, {k})[0];
}

namespace {

// Bergmann-level Hermitian form of the indicator of B(r0), exact moments.
MatrixXcd mass_matrix_inside(const BergmannSpace& b, double r0) {
  const AnsatzSpace& v = b.space;
  const MonomialTable& tab = v.monomials();
  const int n = tab.size();
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double val = monomial_integral_ball(midx_add(tab[i], tab[j]), r0);
      m(i, j) = val;
      m(j, i) = val;
    }
  const MatrixXcd s =
      (v.scalar_orthonormalizer().transpose() * m * v.scalar_orthonormalizer()).cast<cplx>();
  MatrixXcd out = b.basis.adjoint() * detail::kron_apply(s, v.components(), b.basis);
  return 0.5 * (out + out.adjoint().eval());
}

}  // namespace

double mass_inside(const BergmannSpace& b, const VectorXcd& bergmann_coeffs, double r0) {
  const MatrixXcd m = mass_matrix_inside(b, r0);
  return std::real((bergmann_coeffs.adjoint() * m * bergmann_coeffs)(0, 0));
}

std::pair<double, double> concentration_check(const BergmannSpace& b, const SpectrumReport& rep,
                                              int k, double r) {
  const double R = b.radius();
  if (r <= 0.0 || r >= R) throw std::invalid_argument("concentration_check: need 0 < r < R");
  const double lam2 = 2.0 * rep.eigenvalues(k);
  const VectorXcd c = rep.vectors.col(k);
  const double total = c.squaredNorm();
  const double inside = mass_inside(b, c, r);
  const double outside = std::max(0.0, total - inside);
  const double origin_bound = lam2 * R * R / (r * r) * total;
  const double boundary_bound = (1.0 - lam2) * R * R / (R * R - r * r) * total;
  return {outside / origin_bound, inside / boundary_bound};
}

void fill_spectrum_diagnostics(const BergmannSpace& b, const GreenSolver& solver,
                               SpectrumReport& rep, const std::vector<double>& probe_radii) {
  const auto zetas = eigenstate_zeta_all(b, solver, rep);
  const int nstates = int(rep.eigenvalues.size());
  for (int k = 0; k < nstates; ++k) {
    rep.states[k].zeta_residual = zetas[k].residual;
    rep.states[k].zeta_grad_sq = zetas[k].grad_sq;
    rep.states[k].origin_ratio = 0.0;
    rep.states[k].boundary_ratio = 0.0;
  }
  const double R = b.radius();
  for (const double r : probe_radii) {
    const MatrixXcd m = mass_matrix_inside(b, r);
    for (int k = 0; k < nstates; ++k) {
      const double lam2 = 2.0 * rep.eigenvalues(k);
      const VectorXcd c = rep.vectors.col(k);
      const double total = c.squaredNorm();
      const double inside = std::real((c.adjoint() * m * c)(0, 0));
      const double outside = std::max(0.0, total - inside);
      const double o = outside / (lam2 * R * R / (r * r) * total);
      const double bd = inside / ((1.0 - lam2) * R * R / (R * R - r * r) * total);
      rep.states[k].origin_ratio = std::max(rep.states[k].origin_ratio, o);
      rep.states[k].boundary_ratio = std::max(rep.states[k].boundary_ratio, bd);
    }
  }
}

MatrixXcd nahm_laplacian(const ADHMData& d, const Point4& y) {
  const int m = int(d.x[0].rows());
  MatrixXcd out = MatrixXcd::Zero(m, m);
  for (int mu = 0; mu < 4; ++mu) {
    const MatrixXcd a = d.x[mu] - y[mu] * MatrixXcd::Identity(m, m);
    out.noalias() += a * a;
  }
  return 4.0 * kPi * kPi * out;
}

MatrixXcd nahm_laplacian_green(const BergmannSpace& b, const Point4& y,
                               const GreenSolver& solver) {
  std::vector<MonoTerm> f;
  f.push_back({y.norm2(), {0, 0, 0, 0}});
  for (int nu = 0; nu < 4; ++nu) {
    MIdx e2{0, 0, 0, 0};
    e2[nu] = 2;
    f.push_back({1.0, e2});
    MIdx e1{0, 0, 0, 0};
    e1[nu] = 1;
    f.push_back({-2.0 * y[nu], e1});
  }
  const MatrixXcd t = toeplitz_poly(b, f);
  const MatrixXcd g = solver.green_gram(b.space, b.basis);
  return 4.0 * kPi * kPi * (t - 4.0 * g);
}

EdgeSplit split_edge_modes(const BergmannSpace& b, const MatrixXcd& frame, double top_tol) {
  EdgeSplit out;
  const int k = int(frame.cols());
  if (k == 0 || b.space.degree() <= 1) {
    out.clean = frame;
    return out;
  }
  const AnsatzSpace& v = b.space;
  const int m = b.dim(), nc = v.components(), ns = v.n_scalar(), ms = v.m_scalar();
  std::vector<int> hi;
  for (int i = 0; i < ns; ++i)
    if (midx_degree(v.monomials()[i]) >= v.degree() - 1) hi.push_back(i);
  const int nh = int(hi.size());
  MatrixXcd top(2 * nc * nh, k);
  for (int sa = 0; sa < 2; ++sa) {
    const MatrixXcd von = b.basis * frame.middleRows(sa * m, m);
    for (int c = 0; c < nc; ++c) {
      const MatrixXcd gen = v.scalar_orthonormalizer().cast<cplx>() * von.middleRows(c * ms, ms);
      for (int t = 0; t < nh; ++t) top.row((sa * nc + c) * nh + t) = gen.row(hi[t]);
    }
  }
  if (top.rows() < k) {
    MatrixXcd padded = MatrixXcd::Zero(k, k);
    padded.topRows(top.rows()) = top;
    top = std::move(padded);
  }
  // Columns of frame are orthonormal, so the singular values of the top-degree
  // block are top-degree amplitudes of span directions.
  const auto sv = linalg::svd(top);
  int edge = 0;
  while (edge < std::min<int>(int(sv.s.size()), k) && sv.s(edge) > top_tol) ++edge;
  out.n_edge = edge;
  out.clean = frame * sv.vh.adjoint().rightCols(k - edge);
  for (int i = 0; i < sv.s.size(); ++i)
    if (sv.s(i) > top_tol && sv.s(i) < 0.6) out.ambiguous = true;
  return out;
}

MatrixXcd degree_restricted_subbasis(const BergmannSpace& b, int dmax, double tol) {
  const AnsatzSpace& v = b.space;
  const int nc = v.components(), ns = v.n_scalar(), m = b.dim();
  if (dmax >= v.degree()) return MatrixXcd::Identity(m, m);
  // generator coefficients of the basis columns
  MatrixXcd gen(nc * ns, m);
  for (int c = 0; c < nc; ++c)
    gen.middleRows(c * ns, ns).noalias() = v.scalar_orthonormalizer().cast<cplx>() *
                                           b.basis.middleRows(c * v.m_scalar(), v.m_scalar());
  // rows of monomial degree > dmax
  std::vector<int> hi;
  for (int i = 0; i < ns; ++i)
    if (midx_degree(v.monomials()[i]) > dmax) hi.push_back(i);
  const int nh = int(hi.size());
  MatrixXcd top(nc * nh, m);
  for (int c = 0; c < nc; ++c)
    for (int t = 0; t < nh; ++t) top.row(c * nh + t) = gen.row(c * ns + hi[t]);
  const auto sv = linalg::svd(top);
  int rank_cnt = 0;
  const double smax = sv.s.size() ? sv.s(0) : 0.0;
  while (rank_cnt < sv.s.size() && sv.s(rank_cnt) > tol * std::max(smax, 1.0)) ++rank_cnt;
  const int null_dim = m - rank_cnt;
  if (null_dim <= 0) return MatrixXcd(m, 0);
  // kernel combinations (Bergmann-basis coordinates): last columns of V = (vh)^H
  return sv.vh.adjoint().rightCols(null_dim);
}

}  // namespace nahmlab
