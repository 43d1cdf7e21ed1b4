#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "momtail/eigensolve.hpp"
#include "momtail/potentials.hpp"
#include "momtail/tailfit.hpp"

namespace momtail {

struct GridSpec {
  enum class Kind { linear, log } kind = Kind::log;
  double min = 0.0;
  double max = 0.0;
  int count = 0;  // total points (linear) or points per decade (log)

  std::vector<double> points() const;
};

/// "linear:min:max:count" or "log:min:max:per_decade".
GridSpec parse_grid_spec(const std::string& text);
GridSpec grid_from_json(const nlohmann::json& j);

struct VerifyOptions {
  std::optional<Window> window;     // tail window; default [3 p_scale, 1e3]
  std::optional<Window> im_window;  // bouncer imaginary part; default [3 p_scale, 300]
  double tolerance = 0.05;          // relative, pointwise envelope and ladder checks
  double coefficient_tolerance = 0.02;
  double exponent_tolerance = 0.1;
  double im_exponent_tolerance = 0.1;
  double ladder_p = 200.0;
  int per_decade = 40;
};

struct RunConfig {
  std::optional<PotentialSpec> potential;
  std::optional<int> n;
  Parity parity = Parity::even;
  std::optional<GridSpec> grid;
  VerifyOptions verify;
};

/// Parses the whole config document. Throws ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j);

/// Reads and parses a config file. Throws ConfigError (including for invalid JSON).
RunConfig load_run_config(const std::string& path);

}  // namespace momtail
