#include "nahmlab/symbol_index.hpp"

#include <limits>
#include <stdexcept>

#include "nahmlab/clifford.hpp"
#include "nahmlab/detail/assembly.hpp"
#include "nahmlab/errors.hpp"
#include "nahmlab/linalg.hpp"

namespace nahmlab {

namespace {

Mat2 chat(int mu) { return -clifford_rep().sigma(mu).adjoint(); }

MatrixXcd assemble_t(const std::array<MatrixXcd, 4>& fhat) {
  const int m = int(fhat[0].rows());
  MatrixXcd t = MatrixXcd::Zero(2 * m, 2 * m);
  for (int mu = 0; mu < 4; ++mu) {
    const Mat2 c = chat(mu);
    for (int so = 0; so < 2; ++so)
      for (int si = 0; si < 2; ++si)
        if (c(so, si) != cplx(0.0)) t.block(so * m, si * m, m, m) += c(so, si) * fhat[mu];
  }
  return t;
}

std::vector<Point4> boundary_samples(double R, int n1 = 12, int n2 = 12, int nphi = 16) {
  std::vector<Point4> pts;
  for (int i = 0; i < n1; ++i) {
    const double t1 = kPi * (i + 0.5) / n1;
    for (int j = 0; j < n2; ++j) {
      const double t2 = kPi * (j + 0.5) / n2;
      for (int k = 0; k < nphi; ++k) {
        const double ph = 2.0 * kPi * k / nphi;
        Point4 x;
        x[0] = R * std::sin(t1) * std::sin(t2) * std::cos(ph);
        x[1] = R * std::sin(t1) * std::sin(t2) * std::sin(ph);
        x[2] = R * std::sin(t1) * std::cos(t2);
        x[3] = R * std::cos(t1);
        pts.push_back(x);
      }
    }
  }
  return pts;
}

}  // namespace

int affine_degree(const Point4& y, double R) {
  const double d = y.norm();
  if (d == R) throw std::invalid_argument("affine_degree: y on the boundary");
  return d < R ? 1 : 0;
}

SymbolOp symbol_op_affine(const BergmannSpace& b, const Point4& y) {
  const double R = b.radius();
  double margin = std::abs(y.norm() - R);
  for (const auto& x : boundary_samples(R))
    margin = std::min(margin, (x - y).norm());
  if (margin <= 1e-9)
    throw std::invalid_argument("symbol_op_affine: symbol vanishes on the boundary");
  SymbolOp op;
  op.boundary_margin = margin;
  op.symbol_degree = affine_degree(y, R);
  const int m = b.dim();
  for (int mu = 0; mu < 4; ++mu) {
    MIdx e{0, 0, 0, 0};
    e[mu] = 1;
    op.fhat[mu] = toeplitz_poly(b, {{1.0, e}}) - y[mu] * MatrixXcd::Identity(m, m);
  }
  op.t = assemble_t(op.fhat);
  return op;
}

SymbolOp symbol_op(const BergmannSpace& b, const std::array<std::function<double(Point4)>, 4>& f,
                   int degree, const BallRule& rule) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& x : boundary_samples(b.radius())) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) s += f[mu](x) * f[mu](x);
    margin = std::min(margin, std::sqrt(s));
  }
  if (margin <= 1e-9)
    throw std::invalid_argument("symbol_op: symbol vanishes on the boundary");

  const AnsatzSpace& v = b.space;
  const int n = v.n_scalar();
  SymbolOp op;
  op.boundary_margin = margin;
  op.symbol_degree = degree;
  // scalar Toeplitz blocks by quadrature: M[a,b] = int f x^{a+b}
  std::array<MatrixXd, 4> msc;
  for (auto& m : msc) m = MatrixXd::Zero(n, n);
  VectorXd mono(n);
  for (int k = 0; k < rule.size(); ++k) {
    const Point4& x = rule.node(k);
    for (int i = 0; i < n; ++i) {
      const MIdx& a = v.monomials()[i];
      double val = 1.0;
      for (int d = 0; d < 4; ++d)
        for (int p = 0; p < a[d]; ++p) val *= x[d];
      mono(i) = val;
    }
    const double w = rule.weight(k);
    for (int mu = 0; mu < 4; ++mu) msc[mu].noalias() += (w * f[mu](x)) * mono * mono.transpose();
  }
  for (int mu = 0; mu < 4; ++mu) {
    const MatrixXcd s =
        (v.scalar_orthonormalizer().transpose() * msc[mu] * v.scalar_orthonormalizer())
            .cast<cplx>();
    MatrixXcd t = b.basis.adjoint() * detail::kron_apply(s, v.components(), b.basis);
    op.fhat[mu] = 0.5 * (t + t.adjoint().eval());
  }
  op.t = assemble_t(op.fhat);
  return op;
}

IndexResult numerical_index(const SymbolOp& op, const BergmannSpace& b, double eps_rel) {
  const auto sv = linalg::svd(op.t);
  const int n = int(sv.s.size());
  IndexResult out;
  out.singulars.resize(n);
  for (int i = 0; i < n; ++i) out.singulars(i) = sv.s(n - 1 - i);
  const double smax = sv.s(0);
  int kept = 0;
  while (kept < n && out.singulars(kept) <= eps_rel * smax) ++kept;
  if (kept == 0) {
    out.gap = out.singulars(0) / (eps_rel * smax);
    out.conclusive = out.gap >= 1.0;
    out.kernel = MatrixXcd(n, 0);
    return out;
  }
  const double last_kept = std::max(out.singulars(kept - 1), 1e-14 * smax);
  out.gap = (kept < n ? out.singulars(kept) : smax) / last_kept;
  if (out.gap < 1e2) out.conclusive = false;

  // The square finite section of a nonzero-index operator manufactures
  // truncation-edge near-nulls. On the kernel side these appear only inside
  // the numerically-zero cohort (degenerate with the kernel at y = 0), so
  // sigma-resolved right vectors are genuine kernel approximants. On the
  // cokernel side of a surjective operator every near-null left vector is an
  // approximation-residual direction, recognizable by its top-degree
  // concentration, so the filter applies to all of them.
  int zero_cnt = 0;
  while (zero_cnt < kept && out.singulars(zero_cnt) <= 1e-12 * smax) ++zero_cnt;
  MatrixXcd right(n, kept), left(n, kept);
  for (int i = 0; i < kept; ++i) {
    right.col(i) = sv.vh.adjoint().col(n - 1 - i);
    left.col(i) = sv.u.col(n - 1 - i);
  }
  int ker = kept - zero_cnt;
  MatrixXcd kernel_resolved = right.leftCols(kept - zero_cnt);
  MatrixXcd kernel_zero(n, 0);
  if (zero_cnt > 0) {
    const EdgeSplit rsplit = split_edge_modes(b, MatrixXcd(right.rightCols(zero_cnt)));
    if (rsplit.ambiguous) out.conclusive = false;
    ker += int(rsplit.clean.cols());
    kernel_zero = rsplit.clean;
  }
  const EdgeSplit lsplit = split_edge_modes(b, left);
  if (lsplit.ambiguous) out.conclusive = false;
  out.dim_ker = ker;
  out.dim_coker = int(lsplit.clean.cols());
  out.index = out.dim_ker - out.dim_coker;
  out.kernel.resize(n, kernel_resolved.cols() + kernel_zero.cols());
  out.kernel.leftCols(kernel_resolved.cols()) = kernel_resolved;
  out.kernel.rightCols(kernel_zero.cols()) = kernel_zero;
  return out;
}

KernelCheck explicit_kernel_check(const BergmannSpace& b, const GreenSolver& solver,
                                  const IndexResult& idx) {
  if (b.rank() != 1) throw std::invalid_argument("explicit_kernel_check: line bundle only");
  const AnsatzSpace& v = b.space;
  const int m = b.dim(), ms = v.m_scalar();

  // Bergmann coordinates of the constant fields eta_1, eta_2.
  const MatrixXd og = v.scalar_orthonormalizer().transpose() * v.scalar_gram();
  auto const_field = [&](int spin) {
    VectorXcd on = VectorXcd::Zero(v.dim());
    VectorXd gen = VectorXd::Zero(v.n_scalar());
    gen(0) = 1.0;
    on.segment(spin * ms, ms) = (og * gen).cast<cplx>();
    return VectorXcd(b.basis.adjoint() * on);
  };
  const VectorXcd e1 = const_field(0), e2 = const_field(1);

  // s = -(eta_1 (x) eps(eta_1) + eta_2 (x) eps(eta_2)); eps(eta_1) = eta_2,
  // eps(eta_2) = -eta_1, so the aux-spin blocks are (+eta_2, -eta_1).
  VectorXcd w = VectorXcd::Zero(2 * m);
  w.segment(0, m) = e2;
  w.segment(m, m) = -e1;
  w.normalize();

  KernelCheck out;
  if (idx.kernel.cols() == 0) {
    out.kernel_angle = kPi / 2;
  } else {
    const double c = (idx.kernel.adjoint() * w).norm();
    out.kernel_angle = std::acos(std::clamp(c, 0.0, 1.0));
  }

  // tau solve: sum_mu x_mu chat_mu s = D+ tau, one aux-spin column at a time.
  double worst = 0.0;
  for (int a = 0; a < 2; ++a) {
    VectorXcd rhs_on = VectorXcd::Zero(v.dim());
    for (int sa = 0; sa < 2; ++sa) {
      // field part of the aux block sa: (+eta_2) for sa=0, (-eta_1) for sa=1
      const int field_spin = (sa == 0) ? 1 : 0;
      const cplx field_sign = (sa == 0) ? 1.0 : -1.0;
      for (int mu = 0; mu < 4; ++mu) {
        const cplx cc = chat(mu)(a, sa);
        if (cc == cplx(0.0)) continue;
        VectorXd gen = VectorXd::Zero(v.n_scalar());
        MIdx e{0, 0, 0, 0};
        e[mu] = 1;
        gen(v.monomials().find(e)) = 1.0;
        rhs_on.segment(field_spin * ms, ms) += field_sign * cc * (og * gen).cast<cplx>();
      }
    }
    const auto sol = solver.dplus_solve(v, rhs_on);
    worst = std::max(worst, sol.residual(0));
  }
  out.tau_residual = worst;

  // harmonicity of rho/|x|^2 for rho = (|x|^2 - R^2)/2, radial Laplacian
  // f'' + 3 f'/r of f(r) = 1/2 - R^2/(2 r^2).
  const double R = b.radius();
  double h = 0.0;
  for (double r = 0.3; r < R; r += 0.1) {
    const double fpp = -3.0 * R * R / (r * r * r * r);
    const double fp = R * R / (r * r * r);
    h = std::max(h, std::abs(fpp + 3.0 * fp / r));
  }
  out.harmonicity = h;
  return out;
}

}  // namespace nahmlab
