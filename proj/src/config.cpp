#include "ballsteinitz/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ballsteinitz {

void Config::validate() const {
  if (!(eps_geom > 0) || !(eps_feature > 0) || !(theta0 > 0) || max_bisection <= 0 ||
      !(tess_step > 0) || seed == 0)
    throw FormatError("configuration values must be positive");
  if (!(theta0 < std::numbers::pi / 2)) throw FormatError("theta0 must be below pi/2");
  try {
    tolerance().validate();
  } catch (const GeometryError& e) {
    throw FormatError(e.what());
  }
}

RealizerOptions Config::realizer_options() const {
  RealizerOptions o;
  o.tol = tolerance();
  o.theta0 = theta0;
  o.max_bisection = max_bisection;
  return o;
}

Config config_from_json(const Json& j, Config c) {
  if (!j.is_object()) throw FormatError("configuration must be a JSON object");
  try {
    if (j.contains("eps_geom")) c.eps_geom = j.at("eps_geom").get<double>();
    if (j.contains("eps_feature")) c.eps_feature = j.at("eps_feature").get<double>();
    if (j.contains("theta0")) c.theta0 = j.at("theta0").get<double>();
    if (j.contains("max_bisection")) c.max_bisection = j.at("max_bisection").get<int>();
    if (j.contains("tessellation_step")) c.tess_step = j.at("tessellation_step").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad configuration value: ") + e.what());
  }
  c.validate();
  return c;
}

Json config_to_json(const Config& c) {
  return {{"schema", kSchemaVersion},       {"eps_geom", c.eps_geom},
          {"eps_feature", c.eps_feature},   {"theta0", c.theta0},
          {"max_bisection", c.max_bisection}, {"tessellation_step", c.tess_step},
          {"seed", c.seed}};
}

Config config_from_environment() {
  const char* path = std::getenv("BALLSTEINITZ_CONFIG");
  if (!path || !*path) return {};
  std::ifstream in(path);
  if (!in) throw FormatError(std::string("cannot read configuration file ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(parse_json(ss.str()));
}

}  // namespace ballsteinitz
