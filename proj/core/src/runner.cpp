#include "nahmlab/runner.hpp"

#include <json.hpp>
#include <random>

#include "nahmlab/bergmann.hpp"
#include "nahmlab/diracop.hpp"
#include "nahmlab/errors.hpp"
#include "nahmlab/family.hpp"
#include "nahmlab/io.hpp"
#include "nahmlab/linalg.hpp"
#include "nahmlab/nahm.hpp"
#include "nahmlab/symbol_index.hpp"

namespace nahmlab {

using nlohmann::json;

namespace {

std::string g(double v) { return fmt_g17(v); }

// Coupled runs cannot hold the exact-background separation; audit via a
// relaxed floor and carry the measured gap into the report.
double gap_floor(const FieldSpec& f) { return f.kind == "flat" ? 100.0 : 1.2; }

BergmannSpace bergmann_from_config(const RunConfig& c) {
  const GaugeField a = make_field(c.field);
  return compute_bergmann(a, c.degree, c.radius, c.thresholds.eps_null, nullptr,
                          c.thresholds.cond_tol, gap_floor(c.field));
}

std::vector<Point4> fiber_points_interior(double R) {
  return {{{0, 0, 0, 0}},
          {{0.2 * R, 0, 0, 0}},
          {{0, 0.25 * R, 0, 0}},
          {{0.15 * R, 0.15 * R, 0.15 * R, 0.15 * R}},
          {{0, 0, 0, 0.3 * R}},
          {{0.3 * R, 0.1 * R, 0, 0}},
          {{-0.2 * R, 0.2 * R, 0.1 * R, 0}},
          {{0.35 * R, 0, -0.1 * R, 0.05 * R}},
          {{0, -0.3 * R, 0.2 * R, -0.1 * R}},
          {{0.4 * R, 0, 0, 0}}};
}

std::vector<Point4> fiber_points_exterior(double R) {
  return {{{1.3 * R, 0, 0, 0}},
          {{0, 1.5 * R, 0, 0}},
          {{R, R, 0, 0}},
          {{0, 0, -1.7 * R, 0}},
          {{R, R, R, R}}};
}

}  // namespace

void write_artifacts(const std::string& outdir, const Artifacts& a) {
  for (const auto& [name, contents] : a) write_text_file(outdir + "/" + name, contents);
}

Artifacts run_flat_adhm(const RunConfig& c) {
  const BergmannSpace b = bergmann_from_config(c);
  const ADHMData d = position_ops(b);
  const auto res = adhm_residual(d);

  json j;
  j["degree"] = c.degree;
  j["field"] = c.field.kind;
  j["bergmann_dim"] = b.dim();
  j["null_gap"] = g(b.gap);
  j["eps_null"] = g(b.eps_null);
  j["q_norm"] = g(b.q_norm);
  j["adhm_residual"] = {g(res[0]), g(res[1]), g(res[2])};
  json xn = json::array();
  for (int mu = 0; mu < 4; ++mu) xn.push_back(g(d.x[mu].norm()));
  j["x_frobenius"] = xn;

  Artifacts out;
  out["adhm.json"] = j.dump(2) + "\n";
  if (b.dim() <= 200) {
    CsvTable t({"mu", "i", "j", "re", "im"});
    for (int mu = 0; mu < 4; ++mu)
      for (int i = 0; i < b.dim(); ++i)
        for (int k = 0; k < b.dim(); ++k)
          t.row({std::to_string(mu + 1), std::to_string(i), std::to_string(k),
                 g(d.x[mu](i, k).real()), g(d.x[mu](i, k).imag())});
    out["xmu.csv"] = t.str();
  }
  return out;
}

Artifacts run_spectrum(const RunConfig& c) {
  const GaugeField a = make_field(c.field);
  const BergmannSpace b = compute_bergmann(a, c.degree, c.radius, c.thresholds.eps_null, nullptr,
                                           c.thresholds.cond_tol, gap_floor(c.field));
  SpectrumReport rep = oscillator(b);
  GreenSolver solver(a, c.degree + 2, c.radius, c.thresholds.cond_tol);
  fill_spectrum_diagnostics(b, solver, rep,
                            {0.25 * c.radius, 0.5 * c.radius, 0.75 * c.radius});

  CsvTable t({"index", "half_lambda_sq", "lambda", "zeta_residual", "origin_ratio",
              "boundary_ratio"});
  for (int k = 0; k < rep.eigenvalues.size(); ++k)
    t.row({std::to_string(k), g(rep.states[k].half_lambda_sq), g(rep.states[k].lambda),
           g(rep.states[k].zeta_residual), g(rep.states[k].origin_ratio),
           g(rep.states[k].boundary_ratio)});

  json j;
  j["degree"] = c.degree;
  j["field"] = c.field.kind;
  j["bergmann_dim"] = b.dim();
  j["null_gap"] = g(b.gap);
  j["min_eigenvalue"] = g(rep.eigenvalues(0));
  j["max_eigenvalue"] = g(rep.eigenvalues(rep.eigenvalues.size() - 1));
  json states = json::array();
  for (const auto& s : rep.states) {
    json e;
    e["half_lambda_sq"] = g(s.half_lambda_sq);
    e["lambda"] = g(s.lambda);
    e["zeta_residual"] = g(s.zeta_residual);
    e["origin_ratio"] = g(s.origin_ratio);
    e["boundary_ratio"] = g(s.boundary_ratio);
    states.push_back(e);
  }
  j["states"] = states;

  Artifacts out;
  out["spectrum.csv"] = t.str();
  out["spectrum.json"] = j.dump(2) + "\n";
  return out;
}

Artifacts run_reconstruct(const RunConfig& c) {
  const GaugeField a = make_field(c.field);
  const BergmannSpace b = compute_bergmann(a, c.degree, c.radius, c.thresholds.eps_null, nullptr,
                                           c.thresholds.cond_tol, gap_floor(c.field));
  const ADHMData d = position_ops(b);
  GreenSolver solver(a, c.degree + 2, c.radius, c.thresholds.cond_tol);
  GreenAppliedBasis gab(b, solver);

  CsvTable t({"y1", "y2", "y3", "y4", "fiber_dim", "min_singular", "metric_defect", "f_rec",
              "f_orig"});
  auto scan = [&](const Point4& y, bool interior) {
    // a fiber whose near-null cluster fails the separation gate is recorded as
    // inconclusive (dimension -1) rather than aborting the scan
    int dim = -1;
    double min_singular = -1.0, frec = -1.0, defect = -1.0;
    try {
      const FiberData fd = fiber(b, d, y, c.thresholds.eps_ker);
      dim = fd.dim();
      min_singular = fd.singulars(0);
      if (interior && fd.dim() > 0) frec = curvature_norm(curvature_double_hat(d, y, fd));
    } catch (const GapError&) {
    }
    if (interior) {
      const ReconstructionFiber rf = canonical_map(gab, y);
      defect = linalg::max_abs(
          MatrixXcd(rf.gram - MatrixXcd::Identity(rf.gram.rows(), rf.gram.cols())));
    }
    const double forig = std::sqrt(energy_density(a, y));
    t.row({g(y[0]), g(y[1]), g(y[2]), g(y[3]), std::to_string(dim), g(min_singular), g(defect),
           g(frec), g(forig)});
  };
  for (const auto& y : fiber_points_interior(c.radius)) scan(y, true);
  for (const auto& y : fiber_points_exterior(c.radius)) scan(y, false);

  // correlator table on seeded interior pairs
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-0.7 * c.radius / 2.0, 0.7 * c.radius / 2.0);
  CsvTable ct({"x1_1", "x1_2", "x1_3", "x1_4", "x2_1", "x2_2", "x2_3", "x2_4", "trace_re",
               "trace_im", "flat_closed_form"});
  for (int k = 0; k < 10; ++k) {
    Point4 p1, p2;
    for (int i = 0; i < 4; ++i) {
      p1[i] = u(rng);
      p2[i] = u(rng);
    }
    const MatrixXcd corr = correlator(gab, p1, p2);
    const cplx tr = corr.trace() / double(corr.rows());
    const double closed = 4.0 * kPi * kPi * flat_green_closed(p1, p2, c.radius) *
                           (p1 - p2).norm2();
    ct.row({g(p1[0]), g(p1[1]), g(p1[2]), g(p1[3]), g(p2[0]), g(p2[1]), g(p2[2]), g(p2[3]),
            g(tr.real()), g(tr.imag()), g(closed)});
  }

  Artifacts out;
  out["fibers.csv"] = t.str();
  out["correlator.csv"] = ct.str();
  return out;
}

Artifacts run_index(const RunConfig& c) {
  const BergmannSpace b = bergmann_from_config(c);
  const double R = c.radius;
  const std::vector<Point4> ys = {{{0, 0, 0, 0}},
                                  {{0.2 * R, 0.1 * R, 0, 0}},
                                  {{0.3 * R, 0, 0, 0}},
                                  {{1.5 * R, 0, 0, 0}},
                                  {{0, 0, 2.0 * R, 0}}};
  CsvTable t({"y1", "y2", "y3", "y4", "margin", "degree", "dim_ker", "dim_coker", "index",
              "gap", "conclusive"});
  CsvTable sv({"point", "k", "sigma"});
  int pt = 0;
  for (const auto& y : ys) {
    const SymbolOp op = symbol_op_affine(b, y);
    // exact kernels at the origin resolve at 1e-6; displaced symbols carry
    // truncation-sized kernel approximants
    const double eps = (y.norm() < 1e-12) ? 1e-6 : 1e-2;
    const IndexResult ir = numerical_index(op, b, eps);
    t.row({g(y[0]), g(y[1]), g(y[2]), g(y[3]), g(op.boundary_margin),
           std::to_string(op.symbol_degree), std::to_string(ir.dim_ker),
           std::to_string(ir.dim_coker), std::to_string(ir.index), g(ir.gap),
           std::to_string(int(ir.conclusive))});
    for (int k = 0; k < std::min<int>(12, int(ir.singulars.size())); ++k)
      sv.row({std::to_string(pt), std::to_string(k), g(ir.singulars(k))});
    ++pt;
  }
  Artifacts out;
  out["index.csv"] = t.str();
  out["singulars.csv"] = sv.str();
  return out;
}

Artifacts run_family_cmd(const RunConfig& c) {
  FamilyOptions opt;
  opt.schedule = c.schedule;
  opt.degree = c.degree;
  opt.R = c.radius;
  opt.delta1 = c.thresholds.delta1;
  opt.delta2 = c.thresholds.delta2;
  opt.eps_null = c.thresholds.eps_null;
  opt.gap_min = gap_floor(c.field);
  opt.cond_tol = c.thresholds.cond_tol;
  opt.quad = c.quad;
  opt.flat_control = (c.field.kind == "flat");
  const FamilyReport rep = run_family(opt);

  json j;
  j["degree"] = opt.degree;
  j["delta1"] = g(opt.delta1);
  j["delta2"] = g(opt.delta2);
  j["eps_null"] = g(opt.eps_null);
  j["flat_dim"] = rep.flat_dim;
  j["dim_small"] = rep.dim_small;
  j["dim_small_constant"] = rep.dim_small_constant;
  j["energy_extrapolated"] = g(rep.energy_extrapolated);
  j["instanton_k"] = rep.instanton_k;
  j["rounding_margin"] = g(rep.rounding_margin);
  j["inconclusive_k"] = rep.inconclusive_k;
  j["verdict_k_equals_dim_small"] = rep.verdict_k_equals_dim;
  json scales = json::array();
  for (const auto& s : rep.scales) {
    json e;
    e["rho"] = g(s.rho);
    e["bergmann_dim"] = s.bergmann_dim;
    e["null_gap"] = g(s.null_gap);
    e["dim_small"] = s.dim_small;
    e["dim_mid"] = s.dim_mid;
    e["dim_large"] = s.dim_large;
    e["dichotomy_ok"] = s.dichotomy_ok;
    e["comparison_defect"] = g(s.comparison_defect);
    e["comparison_square"] = s.comparison_square;
    e["ball_energy"] = g(s.ball_energy);
    e["toeplitz_small_x1"] = g(s.toeplitz_small_x1);
    e["toeplitz_small_r2"] = g(s.toeplitz_small_r2);
    e["green_small_norm"] = g(s.green_small_norm);
    e["green_large_dist"] = g(s.green_large_dist);
    e["small_localization"] = g(s.small_localization);
    scales.push_back(e);
  }
  j["scales"] = scales;

  Artifacts out;
  out["report.json"] = j.dump(2) + "\n";

  CsvTable plot({"rho", "k", "half_lambda_sq", "lambda"});
  for (size_t si = 0; si < rep.scales.size(); ++si) {
    const auto& s = rep.scales[si];
    CsvTable t({"index", "half_lambda_sq", "lambda", "zeta_residual", "origin_ratio",
                "boundary_ratio"});
    for (int k = 0; k < s.spectrum.eigenvalues.size(); ++k) {
      t.row({std::to_string(k), g(s.spectrum.states[k].half_lambda_sq),
             g(s.spectrum.states[k].lambda), g(s.spectrum.states[k].zeta_residual),
             g(s.spectrum.states[k].origin_ratio), g(s.spectrum.states[k].boundary_ratio)});
      plot.row({g(s.rho), std::to_string(k), g(s.spectrum.states[k].half_lambda_sq),
                g(s.spectrum.states[k].lambda)});
    }
    out["spectrum_scale" + std::to_string(si) + ".csv"] = t.str();
  }
  out["plotdata.csv"] = plot.str();
  return out;
}

bool family_dichotomy_ok(const Artifacts& a) {
  const auto it = a.find("report.json");
  if (it == a.end()) return true;
  const json j = json::parse(it->second);
  for (const auto& s : j.at("scales"))
    if (!s.at("dichotomy_ok").get<bool>()) return false;
  return true;
}

}  // namespace nahmlab
