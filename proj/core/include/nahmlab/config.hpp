#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nahmlab/gauge.hpp"
#include "nahmlab/quad.hpp"

namespace nahmlab {

struct FieldSpec {
  std::string kind = "flat";  // flat | bpst | twisted
  int rank = 1;
  double rho = 0.2;
  std::array<double, 4> center{0, 0, 0, 0};
  std::array<double, 4> z{0, 0, 0, 0};      // twist vector
  std::string base_kind = "flat";           // base of a twisted field
};

struct ThresholdSpec {
  double eps_null = 1e-8;
  double eps_ker = 1e-6;
  double delta1 = 0.35;
  double delta2 = 0.1;
  double cond_tol = 1e-12;
};

struct RunConfig {
  FieldSpec field;
  int degree = 6;
  double radius = 1.0;
  QuadOrders quad{24, 16, 16, 24};
  ThresholdSpec thresholds;
  std::vector<double> schedule{0.3, 0.2, 0.15};
  std::string out = "out";
  uint64_t seed = 1;
};

/// Parse and validate; throws ConfigError naming the offending field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Canonical serialization; parse(emit(c)) reproduces c exactly.
std::string emit_config(const RunConfig& c);

/// FNV-1a hash of the canonical serialization.
uint64_t config_hash(const RunConfig& c);

GaugeField make_field(const FieldSpec& f);

std::string manifest_json(const RunConfig& c, const std::string& version, double wall_seconds);

}  // namespace nahmlab
