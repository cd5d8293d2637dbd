#pragma once

#include <stdexcept>
#include <string>

namespace nahmlab {

/// A near-null cluster could not be separated cleanly (raise the degree,
/// the quadrature orders, or the threshold).
struct GapError : std::runtime_error {
  explicit GapError(const std::string& what) : std::runtime_error(what) {}
};

/// The quadrature resolution gate refused a run.
struct ResolutionError : std::runtime_error {
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration validation failure; field names the offending key.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(const std::string& field_, const std::string& what)
      : std::runtime_error(what), field(field_) {}
};

}  // namespace nahmlab
