#include "nahmlab/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace nahmlab::linalg {

namespace {
lapack_complex_double* lp(MatrixXcd& m) {
  return reinterpret_cast<lapack_complex_double*>(m.data());
}
}  // namespace

VectorXd eigh(const MatrixXcd& a, MatrixXcd* vecs) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh: square matrix required");
  const lapack_int n = lapack_int(a.rows());
  MatrixXcd work = a;
  VectorXd w(n);
  if (n == 0) return w;
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, vecs ? 'V' : 'N', 'L', n, lp(work),
                                         n, w.data());
  if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
  if (vecs) *vecs = std::move(work);
  return w;
}

VectorXd eigh_real(const MatrixXd& a, MatrixXd* vecs) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh_real: square matrix required");
  const lapack_int n = lapack_int(a.rows());
  MatrixXd work = a;
  VectorXd w(n);
  if (n == 0) return w;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, vecs ? 'V' : 'N', 'L', n, work.data(), n, w.data());
  if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
  if (vecs) *vecs = std::move(work);
  return w;
}

Svd svd(const MatrixXcd& a, bool want_vectors) {
  const lapack_int m = lapack_int(a.rows()), n = lapack_int(a.cols());
  const lapack_int k = std::min(m, n);
  MatrixXcd work = a;
  Svd out;
  out.s.resize(k);
  if (k == 0) return out;
  if (want_vectors) {
    out.u.resize(m, k);
    out.vh.resize(k, n);
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, lp(work), m, out.s.data(),
                                     lp(out.u), m, lp(out.vh), k);
    if (info > 0) {
      // divide-and-conquer did not converge; fall back to the QR-based driver
      work = a;
      VectorXd superb(std::max<lapack_int>(1, k - 1));
      info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, lp(work), m, out.s.data(),
                            lp(out.u), m, lp(out.vh), k, superb.data());
    }
    if (info != 0) throw std::runtime_error("svd failed, info=" + std::to_string(info));
  } else {
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, lp(work), m, out.s.data(),
                                     nullptr, m, nullptr, k);
    if (info > 0) {
      work = a;
      VectorXd superb(std::max<lapack_int>(1, k - 1));
      info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', m, n, lp(work), m, out.s.data(),
                            nullptr, m, nullptr, k, superb.data());
    }
    if (info != 0) throw std::runtime_error("svd failed, info=" + std::to_string(info));
  }
  return out;
}

VectorXd singular_values(const MatrixXcd& a) { return svd(a, false).s; }

MatrixXcd solve_hpd(const MatrixXcd& a, const MatrixXcd& b) {
  const lapack_int n = lapack_int(a.rows()), nrhs = lapack_int(b.cols());
  MatrixXcd af = a, x = b;
  const lapack_int info = LAPACKE_zposv(LAPACK_COL_MAJOR, 'L', n, nrhs, lp(af), n, lp(x), n);
  if (info != 0) throw std::runtime_error("zposv failed, info=" + std::to_string(info));
  return x;
}

MatrixXcd solve_lu(const MatrixXcd& a, const MatrixXcd& b) {
  const lapack_int n = lapack_int(a.rows()), nrhs = lapack_int(b.cols());
  MatrixXcd af = a, x = b;
  std::vector<lapack_int> piv(n);
  const lapack_int info =
      LAPACKE_zgesv(LAPACK_COL_MAJOR, n, nrhs, lp(af), n, piv.data(), lp(x), n);
  if (info != 0) throw std::runtime_error("zgesv failed, info=" + std::to_string(info));
  return x;
}

VectorXd principal_angles(const MatrixXcd& u, const MatrixXcd& v) {
  // sine formulation: stable for angles near zero, where acos of the cosine
  // Gram loses half the digits
  const MatrixXcd res = v - u * (u.adjoint() * v);
  VectorXd s = singular_values(res);
  VectorXd ang(s.size());
  for (int i = 0; i < s.size(); ++i) ang(i) = std::asin(std::clamp(s(i), 0.0, 1.0));
  std::sort(ang.data(), ang.data() + ang.size());
  return ang;
}

double max_abs(const MatrixXcd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace nahmlab::linalg
