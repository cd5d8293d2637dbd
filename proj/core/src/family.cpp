#include "nahmlab/family.hpp"

#include <stdexcept>

#include "nahmlab/errors.hpp"
#include "nahmlab/linalg.hpp"

namespace nahmlab {

std::array<int, 3> spectral_split_counts(const SpectrumReport& rep, double delta1,
                                         double delta2) {
  const double lam_hi = std::sqrt(2.0 / 3.0) - delta2;
  std::array<int, 3> c{0, 0, 0};
  for (int k = 0; k < rep.eigenvalues.size(); ++k) {
    const double lam = std::sqrt(std::max(0.0, 2.0 * rep.eigenvalues(k)));
    if (lam < delta1)
      ++c[0];
    else if (lam > lam_hi)
      ++c[2];
    else
      ++c[1];
  }
  return c;
}

double resolution_gate(double rho, double R, const QuadOrders& orders) {
  const GaugeField a = bpst_field(rho, {});
  const BallRule r1(orders, R);
  const BallRule r2({2 * orders.nr, 2 * orders.nt1, 2 * orders.nt2, 2 * orders.nphi}, R);
  const double e1 = ball_energy(a, R, r1);
  const double e2 = ball_energy(a, R, r2);
  return std::abs(e1 - e2) / std::max(std::abs(e2), 1e-30);
}

MatrixXcd comparison_map(const BergmannSpace& flat_b, const BergmannSpace& bt,
                         const MatrixXcd& large_vectors, double* defect) {
  if (flat_b.space.dim() != bt.space.dim())
    throw std::invalid_argument("comparison_map: parent spaces differ");
  const MatrixXcd large_in_v = bt.basis * large_vectors;
  const MatrixXcd m = large_in_v.adjoint() * flat_b.basis;  // (ml x mf)
  if (defect) {
    const MatrixXcd g = m.adjoint() * m - MatrixXcd::Identity(m.cols(), m.cols());
    *defect = linalg::singular_values(g)(0);
  }
  return m;
}

double toeplitz_limit_norm(const BergmannSpace& b, const SpectrumReport& rep, int dim_small,
                           const std::vector<MonoTerm>& f) {
  if (dim_small == 0) return 0.0;
  const MatrixXcd t = toeplitz_poly(b, f);
  const MatrixXcd w = rep.vectors.leftCols(dim_small);
  return linalg::singular_values(MatrixXcd(w.adjoint() * t * w))(0);
}

std::vector<SpectralRow> spectral_convergence_table(const ScaleResult& sr,
                                                    const VectorXd& flat_spectrum, int count) {
  std::vector<SpectralRow> rows;
  const int off = sr.dim_small + sr.dim_mid;
  for (int k = 0; k < count; ++k) {
    if (off + k >= sr.spectrum.eigenvalues.size() || k >= flat_spectrum.size()) break;
    const double fv = flat_spectrum(k), sv = sr.spectrum.eigenvalues(off + k);
    rows.push_back({k, fv, sv, std::abs(sv - fv) / fv});
  }
  return rows;
}

EnergyLedger instanton_number(const std::vector<double>& rhos,
                              const std::vector<double>& energies) {
  EnergyLedger led;
  const size_t n = rhos.size();
  if (n == 0) return led;
  if (n == 1) {
    led.extrapolated = energies[0];
  } else {
    // E(rho) = k - c rho^4 through the two smallest scales
    size_t i1 = 0, i2 = 1;
    for (size_t i = 0; i < n; ++i)
      if (rhos[i] < rhos[i1]) i1 = i;
    i2 = (i1 == 0) ? 1 : 0;
    for (size_t i = 0; i < n; ++i)
      if (i != i1 && rhos[i] < rhos[i2]) i2 = i;
    const double p1 = std::pow(rhos[i1], 4), p2 = std::pow(rhos[i2], 4);
    led.extrapolated = (energies[i1] * p2 - energies[i2] * p1) / (p2 - p1);
  }
  led.k = int(std::llround(led.extrapolated));
  led.margin = 0.5 - std::abs(led.extrapolated - led.k);
  led.inconclusive = led.margin < 0.2;
  return led;
}

namespace {

void spectral_split(const FamilyOptions& opt, ScaleResult& sr) {
  const auto c = spectral_split_counts(sr.spectrum, opt.delta1, opt.delta2);
  sr.dim_small = c[0];
  sr.dim_mid = c[1];
  sr.dim_large = c[2];
  sr.dichotomy_ok = (sr.dim_mid == 0);
}

std::vector<MonoTerm> coordinate_term(int mu) {
  MIdx e{0, 0, 0, 0};
  e[mu] = 1;
  return {{1.0, e}};
}

std::vector<MonoTerm> radius_sq_terms() {
  std::vector<MonoTerm> f;
  for (int nu = 0; nu < 4; ++nu) {
    MIdx e{0, 0, 0, 0};
    e[nu] = 2;
    f.push_back({1.0, e});
  }
  return f;
}

}  // namespace

FamilyReport run_family(const FamilyOptions& opt) {
  if (opt.schedule.empty()) throw std::invalid_argument("run_family: empty schedule");
  FamilyReport rep;
  rep.opt = opt;

  double min_rho = opt.schedule.front();
  for (const double r : opt.schedule) min_rho = std::min(min_rho, r);
  if (!opt.flat_control) {
    const double drift = resolution_gate(min_rho, opt.R, opt.quad);
    if (drift > 1e-6)
      throw ResolutionError("run_family: quadrature resolution gate failed at rho=" +
                            std::to_string(min_rho) + " (drift " + std::to_string(drift) + ")");
  }

  // Flat baseline of the same rank.
  const GaugeField flat = flat_field(2);
  const BergmannSpace flat_b =
      compute_bergmann(flat, opt.degree, opt.R, 1e-8, nullptr, opt.cond_tol);
  SpectrumReport flat_rep = oscillator(flat_b);
  rep.flat_spectrum = flat_rep.eigenvalues;
  rep.flat_dim = flat_b.dim();

  if (opt.flat_control) {
    // The flat family is constant: every scale reproduces the baseline and the
    // energy ledger is identically zero.
    for (const double rho : opt.schedule) {
      ScaleResult sr;
      sr.rho = rho;
      sr.bergmann_dim = flat_b.dim();
      sr.null_gap = flat_b.gap;
      sr.spectrum = flat_rep;
      spectral_split(opt, sr);
      sr.ball_energy = 0.0;
      sr.comparison_square = true;
      sr.comparison_defect = 0.0;
      rep.scales.push_back(std::move(sr));
    }
    rep.dim_small = rep.scales.front().dim_small;
    rep.instanton_k = 0;
    rep.energy_extrapolated = 0.0;
    rep.rounding_margin = 0.5;
    rep.verdict_k_equals_dim = (rep.dim_small == 0);
    return rep;
  }

  const BallRule erule(opt.quad, opt.R);
  GreenSolver flat_solver(flat, opt.degree + opt.bubble_extra, opt.R, opt.cond_tol);

  // Annulus sample points for the Green-evaluation diagnostics.
  const std::vector<Point4> annulus = {
      {{0.45, 0.1, -0.2, 0.05}}, {{-0.3, 0.35, 0.15, -0.2}}, {{0.1, -0.5, 0.2, 0.25}}};

  std::vector<double> rhos, energies;
  for (const double rho : opt.schedule) {
    ScaleResult sr;
    sr.rho = rho;
    const GaugeField a = bpst_field(rho, {});
    const BergmannSpace b =
        compute_bergmann(a, opt.degree, opt.R, opt.eps_null, nullptr, opt.cond_tol, opt.gap_min);
    sr.bergmann_dim = b.dim();
    sr.null_gap = b.gap;
    sr.spectrum = oscillator(b);
    spectral_split(opt, sr);
    sr.ball_energy = ball_energy(a, opt.R, erule);

    GreenSolver solver(a, opt.degree + opt.bubble_extra, opt.R, opt.cond_tol);
    if (opt.diagnostics) {
      std::vector<double> radii = {0.25 * opt.R, 0.5 * opt.R, 0.75 * opt.R};
      if (3.0 * rho < opt.R) radii.push_back(3.0 * rho);
      fill_spectrum_diagnostics(b, solver, sr.spectrum, radii);
      if (sr.dim_small > 0 && 3.0 * rho < opt.R) {
        double worst = 0.0;
        for (int k = 0; k < sr.dim_small; ++k) {
          const auto [o, bd] = concentration_check(b, sr.spectrum, k, 3.0 * rho);
          worst = std::max(worst, o);
        }
        sr.small_localization = worst;
      }
    }

    // Comparison map onto the large block.
    const MatrixXcd large =
        sr.spectrum.vectors.rightCols(sr.dim_large);
    comparison_map(flat_b, b, large, &sr.comparison_defect);
    sr.comparison_square = (sr.dim_large == rep.flat_dim);

    // Toeplitz limits on the small block.
    sr.toeplitz_small_x1 = toeplitz_limit_norm(b, sr.spectrum, sr.dim_small, coordinate_term(0));
    sr.toeplitz_small_r2 = toeplitz_limit_norm(b, sr.spectrum, sr.dim_small, radius_sq_terms());

    // Green-evaluation limits.
    {
      const MatrixXcd gcoef = solver.apply(b.space, b.basis);
      const MatrixXcd gflat = flat_solver.apply(flat_b.space, flat_b.basis);
      double worst_small = 0.0, worst_large = 0.0;
      double defect_dummy;
      const MatrixXcd m = comparison_map(flat_b, b, large, &defect_dummy);
      for (const auto& x : annulus) {
        // evaluation of G on the basis fields at x
        auto eval_all = [&](const GreenSolver& s, const MatrixXcd& coef) {
          MatrixXcd vals(2 * s.rank(), coef.cols());
          for (int j = 0; j < coef.cols(); ++j) vals.col(j) = s.evaluate(coef.col(j), x);
          return vals;
        };
        const MatrixXcd vt = eval_all(solver, gcoef);
        const MatrixXcd vf = eval_all(flat_solver, gflat);
        if (sr.dim_small > 0) {
          const MatrixXcd vsmall = vt * (sr.spectrum.vectors.leftCols(sr.dim_small));
          worst_small = std::max(worst_small, linalg::singular_values(vsmall)(0));
        }
        const MatrixXcd vlarge = vt * (sr.spectrum.vectors.rightCols(sr.dim_large));
        const MatrixXcd diff = vlarge * m - vf;
        worst_large = std::max(worst_large, linalg::singular_values(diff)(0));
      }
      sr.green_small_norm = worst_small;
      sr.green_large_dist = worst_large;
    }

    rhos.push_back(rho);
    energies.push_back(sr.ball_energy);
    rep.scales.push_back(std::move(sr));
  }

  // Consensus small dimension over dichotomy-passing scales.
  rep.dim_small = -1;
  for (const auto& sr : rep.scales)
    if (sr.dichotomy_ok) {
      if (rep.dim_small < 0)
        rep.dim_small = sr.dim_small;
      else if (rep.dim_small != sr.dim_small)
        rep.dim_small_constant = false;
    }

  const EnergyLedger led = instanton_number(rhos, energies);
  rep.energy_extrapolated = led.extrapolated;
  rep.instanton_k = led.k;
  rep.rounding_margin = led.margin;
  rep.inconclusive_k = led.inconclusive;
  rep.verdict_k_equals_dim = (rep.dim_small >= 0 && rep.instanton_k == rep.dim_small &&
                              rep.dim_small_constant && !led.inconclusive);
  return rep;
}

}  // namespace nahmlab
