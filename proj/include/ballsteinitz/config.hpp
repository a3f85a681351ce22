#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ballsteinitz/json_io.hpp"
#include "ballsteinitz/realizer.hpp"

namespace ballsteinitz {

struct Config {
  double eps_geom = 1e-9;
  double eps_feature = 1e-6;
  double theta0 = 0.2;
  int max_bisection = 20;
  double tess_step = 2.0;  // degrees
  std::uint64_t seed = 0x5eed;

  /// Throws FormatError unless every value is positive, theta0 < pi/2 and
  /// the tolerances are ordered.
  void validate() const;

  Tolerance tolerance() const { return {eps_geom, eps_feature}; }
  RealizerOptions realizer_options() const;
};

/// Keys present in `j` override `base`.
Config config_from_json(const Json& j, Config base = {});
Json config_to_json(const Config& c);

/// Defaults, overridden by the file named in BALLSTEINITZ_CONFIG if set.
Config config_from_environment();

}  // namespace ballsteinitz
