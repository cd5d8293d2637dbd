#pragma once

#include <optional>
#include <vector>

#include "nahmlab/bergmann.hpp"
#include "nahmlab/quad.hpp"

namespace nahmlab {

struct FamilyOptions {
  std::vector<double> schedule;  // concentration scales, large to small
  int degree = 8;
  double R = 1.0;
  double delta1 = 0.35;
  double delta2 = 0.1;
  double eps_null = 8e-3;  // relative Dirac-form threshold for coupled runs
  double gap_min = 1.2;    // audited null-cluster separation requirement
  double cond_tol = 1e-12;
  QuadOrders quad{24, 16, 16, 24};
  int bubble_extra = 2;      // bubble degree = N + bubble_extra
  bool diagnostics = true;   // zeta residuals + concentration per state
  bool flat_control = false; // sweep the flat field instead (zero-energy ledger)
};

struct ScaleResult {
  double rho = 0.0;
  int bergmann_dim = 0;
  double null_gap = 0.0;
  SpectrumReport spectrum;
  int dim_small = 0, dim_mid = 0, dim_large = 0;
  bool dichotomy_ok = false;
  double comparison_defect = -1.0;   // || M^dag M - 1 || against the flat space
  bool comparison_square = false;    // large-block dimension equals flat dimension
  double ball_energy = 0.0;
  double toeplitz_small_x1 = -1.0;   // ||x1-hat|| on the small block
  double toeplitz_small_r2 = -1.0;   // |||x|^2-hat|| on the small block
  double green_small_norm = -1.0;    // sup_x ||ev_x G|| on the small block
  double green_large_dist = -1.0;    // sup_x distance to the flat evaluation
  double small_localization = -1.0;  // origin ratio at r = 3 rho over small states
};

struct FamilyReport {
  FamilyOptions opt;
  std::vector<ScaleResult> scales;
  VectorXd flat_spectrum;
  int flat_dim = 0;
  int dim_small = -1;            // consensus over dichotomy-passing scales
  bool dim_small_constant = true;
  double energy_extrapolated = 0.0;
  int instanton_k = 0;
  double rounding_margin = 0.0;  // 0.5 - |extrapolated - k|
  bool inconclusive_k = false;   // margin < 0.2
  bool verdict_k_equals_dim = false;
};

/// The concentration experiment: instanton family swept over the schedule,
/// flat baseline, spectral splits, comparison maps, operator-limit
/// diagnostics, energy ledger.
/// Throws ResolutionError when the quadrature gate fails at the smallest
/// scale, GapError when a Bergmann construction cannot separate its null
/// cluster.
FamilyReport run_family(const FamilyOptions& opt);

/// Relative quadrature drift of the instanton ball energy when all orders are
/// doubled; the resolution gate requires <= 1e-6.
double resolution_gate(double rho, double R, const QuadOrders& orders);

/// Counts (small, mid, large) of oscillator eigenvalues against the bands
/// lambda < delta1 and lambda > sqrt(2/3) - delta2.
std::array<int, 3> spectral_split_counts(const SpectrumReport& rep, double delta1,
                                         double delta2);

/// Pairing matrix M_ij = <large_i, flat_j> of the comparison map onto the
/// large block, and its isometry defect ||M^dag M - 1||_2.
MatrixXcd comparison_map(const BergmannSpace& flat_b, const BergmannSpace& bt,
                         const MatrixXcd& large_vectors, double* defect);

/// Operator norm of the Toeplitz operator of f restricted to the small block.
double toeplitz_limit_norm(const BergmannSpace& b, const SpectrumReport& rep, int dim_small,
                           const std::vector<MonoTerm>& f);

/// First `count` rows of the large-spectrum convergence table.
struct SpectralRow {
  int k;
  double flat_value;
  double scale_value;
  double rel_gap;
};
std::vector<SpectralRow> spectral_convergence_table(const ScaleResult& sr,
                                                    const VectorXd& flat_spectrum, int count);

/// Energy-ledger rounding: extrapolate the ball energies of the two smallest
/// scales in rho^4 and round.
struct EnergyLedger {
  double extrapolated = 0.0;
  int k = 0;
  double margin = 0.0;
  bool inconclusive = false;
};
EnergyLedger instanton_number(const std::vector<double>& rhos,
                              const std::vector<double>& energies);

}  // namespace nahmlab
