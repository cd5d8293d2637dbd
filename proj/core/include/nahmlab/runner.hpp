#pragma once

#include <map>
#include <string>

#include "nahmlab/config.hpp"

namespace nahmlab {

/// Experiment drivers shared by the command-line tool and the test suites.
/// Each returns the full set of result files as (name, contents) pairs, so
/// reruns can be compared byte for byte. File formats:
///   *.csv  - header row, then data rows, doubles printed with %.17g
///   *.json - canonical serialization
using Artifacts = std::map<std::string, std::string>;

/// Bergmann dimensions, position operators and commutator residuals.
Artifacts run_flat_adhm(const RunConfig& c);

/// Oscillator spectrum with per-state diagnostics
/// (index, half_lambda_sq, lambda, zeta_residual, origin_ratio, boundary_ratio).
Artifacts run_spectrum(const RunConfig& c);

/// Fiber scan and correlator table.
Artifacts run_reconstruct(const RunConfig& c);

/// Toeplitz symbol index table plus singular values for audit.
Artifacts run_index(const RunConfig& c);

/// Concentration-family report.
Artifacts run_family_cmd(const RunConfig& c);

/// Whether every scheduled scale of a family report passed the spectral
/// dichotomy gate (drives the inconclusive-gap exit code).
bool family_dichotomy_ok(const Artifacts& a);

void write_artifacts(const std::string& outdir, const Artifacts& a);

}  // namespace nahmlab
