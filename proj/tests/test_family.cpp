#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nahmlab/errors.hpp"
#include "nahmlab/family.hpp"
#include "oracles.hpp"

using namespace nahmlab;

TEST_CASE("resolution gate") {
  CHECK(resolution_gate(0.15, 1.0, {24, 16, 16, 24}) <= 1e-6);
  // a deeply concentrated scale defeats the default radial order
  CHECK(resolution_gate(0.02, 1.0, {12, 8, 8, 12}) > 1e-6);
  FamilyOptions opt;
  opt.schedule = {0.02};
  opt.degree = 2;
  opt.quad = {12, 8, 8, 12};
  CHECK_THROWS_AS(run_family(opt), ResolutionError);
}

TEST_CASE("energy ledger") {
  // synthetic charge-1 ledger with the closed-form deficit
  std::vector<double> rhos{0.3, 0.2, 0.15};
  std::vector<double> es;
  for (double r : rhos) es.push_back(oracles::instanton_ball_energy_exact(r, 1.0));
  const EnergyLedger led = instanton_number(rhos, es);
  CHECK(led.k == 1);
  CHECK(led.margin >= 0.4);
  CHECK(!led.inconclusive);
  // flat ledger
  const EnergyLedger led0 = instanton_number({0.3, 0.2}, {0.0, 0.0});
  CHECK(led0.k == 0);
  CHECK(led0.margin == doctest::Approx(0.5));
}

TEST_CASE("spectral split counts") {
  SpectrumReport rep;
  rep.eigenvalues.resize(3);
  rep.eigenvalues << 0.02, 0.2, 0.45;  // lambda = 0.2, 0.63, 0.95
  const auto c = spectral_split_counts(rep, 0.35, 0.1);
  CHECK(c[0] == 1);
  CHECK(c[1] == 1);
  CHECK(c[2] == 1);
}

TEST_CASE("comparison map of a space with itself is the identity") {
  const BergmannSpace b = compute_bergmann(flat_field(2), 3, 1.0, 1e-8);
  double defect = -1.0;
  const MatrixXcd m =
      comparison_map(b, b, MatrixXcd::Identity(b.dim(), b.dim()), &defect);
  CHECK(m.rows() == b.dim());
  CHECK(defect <= 1e-10);
}

TEST_CASE("toeplitz norm on a block") {
  const BergmannSpace b = compute_bergmann(flat_field(1), 3, 1.0, 1e-8);
  const SpectrumReport rep = oscillator(b);
  // the unit symbol compresses to the identity
  CHECK(toeplitz_limit_norm(b, rep, 2, {{1.0, {0, 0, 0, 0}}}) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(toeplitz_limit_norm(b, rep, 0, {{1.0, {1, 0, 0, 0}}}) == 0.0);
}

TEST_CASE("flat control family") {
  FamilyOptions opt;
  opt.schedule = {0.3, 0.2};
  opt.degree = 3;
  opt.flat_control = true;
  const FamilyReport rep = run_family(opt);
  CHECK(rep.dim_small == 0);
  CHECK(rep.instanton_k == 0);
  CHECK(rep.verdict_k_equals_dim);
  CHECK(rep.scales.size() == 2);
  for (const auto& s : rep.scales) {
    CHECK(s.dichotomy_ok);  // the flat floor sits above the band
    CHECK(s.dim_small == 0);
    CHECK(s.ball_energy == 0.0);
  }
}

TEST_CASE("small instanton family smoke run") {
  FamilyOptions opt;
  opt.schedule = {0.4, 0.3};
  opt.degree = 4;
  opt.eps_null = 2.5e-3;
  opt.gap_min = 1.2;
  opt.diagnostics = false;
  const FamilyReport rep = run_family(opt);
  REQUIRE(rep.scales.size() == 2);
  // energy ledger tracks the closed form and rounds to charge one
  for (const auto& s : rep.scales)
    CHECK(std::abs(s.ball_energy - oracles::instanton_ball_energy_exact(s.rho, 1.0)) <= 1e-5);
  CHECK(rep.instanton_k == 1);
  CHECK(rep.rounding_margin >= 0.4);
  // the large spectrum approaches the flat ladder from above
  for (const auto& s : rep.scales) {
    const auto rows = spectral_convergence_table(s, rep.flat_spectrum, 4);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
      CHECK(r.scale_value >= r.flat_value - 0.02);
      CHECK(r.rel_gap <= 0.08);
    }
    CHECK(s.dim_small + s.dim_mid + s.dim_large == s.bergmann_dim);
  }
  // no spectral flow between the recorded scales
  CHECK(rep.scales[0].dim_small == rep.scales[1].dim_small);
}
