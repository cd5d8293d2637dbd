#include "nahmlab/ansatz.hpp"

#include <stdexcept>

#include "nahmlab/linalg.hpp"

namespace nahmlab {

OrthoReport spectral_orthonormalize(const MatrixXd& gram, double tol) {
  MatrixXd vecs;
  const VectorXd evals = linalg::eigh_real(gram, &vecs);
  const int n = int(evals.size());
  const double emax = evals(n - 1);
  if (emax <= 0.0) throw std::runtime_error("spectral_orthonormalize: Gram not positive");
  int first = 0;
  while (first < n && evals(first) < tol * emax) ++first;
  const int kept = n - first;
  if (kept == 0) throw std::runtime_error("spectral_orthonormalize: all generators dropped");
  OrthoReport rep;
  rep.retained = kept;
  rep.condition = emax / evals(first);
  rep.transform.resize(n, kept);
  // Best-conditioned directions first.
  for (int j = 0; j < kept; ++j)
    rep.transform.col(j) = vecs.col(n - 1 - j) / std::sqrt(evals(n - 1 - j));
  // One refinement pass: the first factorization leaves a residual of order
  // (unit roundoff) * condition, which ill-conditioned monomial Grams can
  // push above the orthonormality budget.
  const MatrixXd r = rep.transform.transpose() * gram * rep.transform;
  MatrixXd rvecs;
  const VectorXd revals = linalg::eigh_real(r, &rvecs);
  MatrixXd rinv_sqrt = rvecs;
  for (int j = 0; j < kept; ++j) rinv_sqrt.col(j) /= std::sqrt(revals(j));
  rep.transform = rep.transform * rinv_sqrt * rvecs.transpose();
  return rep;
}

namespace {

MatrixXd bubble_scalar_gram(const MonomialTable& tab, double R) {
  const int n = tab.size();
  MatrixXd g(n, n);
  const double R2 = R * R;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const MIdx ab = midx_add(tab[i], tab[j]);
      double v = R2 * R2 * monomial_integral(ab, R);
      for (int nu = 0; nu < 4; ++nu) {
        MIdx g1 = ab;
        g1[nu] += 2;
        v -= 2.0 * R2 * monomial_integral(g1, R);
        for (int lam = 0; lam < 4; ++lam) {
          MIdx g2 = g1;
          g2[lam] += 2;
          v += monomial_integral(g2, R);
        }
      }
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

}  // namespace

AnsatzSpace AnsatzSpace::poly(int degree, int rank, Chirality chi, double R, double cond_tol) {
  if (degree < 0) throw std::invalid_argument("AnsatzSpace: degree must be >= 0");
  if (rank < 1) throw std::invalid_argument("AnsatzSpace: rank must be >= 1");
  AnsatzSpace s;
  s.degree_ = degree;
  s.rank_ = rank;
  s.chi_ = chi;
  s.bubble_ = false;
  s.R_ = R;
  s.cond_tol_ = cond_tol;
  s.tab_ = std::make_shared<MonomialTable>(degree);
  s.scalar_gram_ = moment_matrix(*s.tab_, MIdx{0, 0, 0, 0}, R);
  s.ortho_ = spectral_orthonormalize(s.scalar_gram_, cond_tol);
  return s;
}

AnsatzSpace AnsatzSpace::bubble(int degree, int rank, Chirality chi, double R, double cond_tol) {
  AnsatzSpace s = poly(degree, rank, chi, R, cond_tol);
  s.bubble_ = true;
  s.scalar_gram_ = bubble_scalar_gram(*s.tab_, R);
  s.ortho_ = spectral_orthonormalize(s.scalar_gram_, cond_tol);
  return s;
}

VectorXcd AnsatzSpace::to_generators(const VectorXcd& coeffs) const {
  if (coeffs.size() != dim()) throw std::invalid_argument("to_generators: size mismatch");
  const int nc = components(), ns = n_scalar(), ms = m_scalar();
  VectorXcd out(generator_count());
  for (int c = 0; c < nc; ++c)
    out.segment(c * ns, ns) = ortho_.transform * coeffs.segment(c * ms, ms);
  return out;
}

VectorXcd AnsatzSpace::evaluate_generators(const VectorXcd& gen, const Point4& x) const {
  const int nc = components(), ns = n_scalar();
  VectorXd mono(ns);
  for (int i = 0; i < ns; ++i) {
    const MIdx& a = (*tab_)[i];
    double v = 1.0;
    for (int d = 0; d < 4; ++d)
      for (int p = 0; p < a[d]; ++p) v *= x[d];
    mono(i) = v;
  }
  if (bubble_) mono *= (R_ * R_ - x.norm2());
  VectorXcd val(nc);
  for (int c = 0; c < nc; ++c)
    val(c) = (gen.segment(c * ns, ns).array() * mono.array().cast<cplx>()).sum();
  return val;
}

VectorXcd AnsatzSpace::evaluate(const VectorXcd& coeffs, const Point4& x) const {
  return evaluate_generators(to_generators(coeffs), x);
}

}  // namespace nahmlab
