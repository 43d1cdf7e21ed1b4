#include "momtail/config.hpp"

#include <fstream>
#include <sstream>

#include "momtail/error.hpp"
#include "momtail/momentum.hpp"
#include "momtail/serialize.hpp"

namespace momtail {

using nlohmann::json;

std::vector<double> GridSpec::points() const {
  if (kind == Kind::linear) return linear_grid(min, max, count);
  return log_grid(min, max, count);
}

namespace {

GridSpec checked(GridSpec g) {
  if (!(g.min < g.max)) throw ConfigError("grid needs min < max");
  if (g.kind == GridSpec::Kind::linear && g.count < 2) throw ConfigError("linear grid needs count >= 2");
  if (g.kind == GridSpec::Kind::log && (g.count < 1 || !(g.min > 0.0))) {
    throw ConfigError("log grid needs min > 0 and per_decade >= 1");
  }
  return g;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

Window window_from_json(const json& j, const char* key) {
  const auto& w = j.at(key);
  if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
    throw ConfigError(std::string("'") + key + "' must be [p_min, p_max]");
  }
  Window out{w[0].get<double>(), w[1].get<double>()};
  if (!(out.p_min > 0.0 && out.p_min < out.p_max)) throw ConfigError(std::string("'") + key + "' needs 0 < p_min < p_max");
  return out;
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("grid spec must be kind:min:max:count, got '" + text + "'");
  GridSpec g;
  if (parts[0] == "linear") {
    g.kind = GridSpec::Kind::linear;
  } else if (parts[0] == "log") {
    g.kind = GridSpec::Kind::log;
  } else {
    throw ConfigError("grid kind must be 'linear' or 'log'");
  }
  g.min = parse_double(parts[1]);
  g.max = parse_double(parts[2]);
  const double count = parse_double(parts[3]);
  if (count != static_cast<int>(count)) throw ConfigError("grid count must be an integer");
  g.count = static_cast<int>(count);
  return checked(g);
}

GridSpec grid_from_json(const json& j) {
  if (j.is_string()) return parse_grid_spec(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("grid must be a string or an object");
  GridSpec g;
  const std::string kind = j.value("kind", std::string("log"));
  if (kind == "linear") {
    g.kind = GridSpec::Kind::linear;
    g.count = j.value("count", 0);
  } else if (kind == "log") {
    g.kind = GridSpec::Kind::log;
    g.count = j.value("per_decade", 40);
  } else {
    throw ConfigError("grid kind must be 'linear' or 'log'");
  }
  if (!j.contains("min") || !j.contains("max")) throw ConfigError("grid needs min and max");
  g.min = j.at("min").get<double>();
  g.max = j.at("max").get<double>();
  return checked(g);
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("potential")) c.potential = potential_from_json(j.at("potential"));
    if (j.contains("state")) {
      const auto& s = j.at("state");
      if (s.contains("n")) c.n = s.at("n").get<int>();
      if (s.contains("parity")) c.parity = parse_parity(s.at("parity").get<std::string>());
    }
    if (j.contains("grid")) c.grid = grid_from_json(j.at("grid"));
    if (j.contains("verify")) {
      const auto& v = j.at("verify");
      if (v.contains("window")) c.verify.window = window_from_json(v, "window");
      if (v.contains("im_window")) c.verify.im_window = window_from_json(v, "im_window");
      c.verify.tolerance = v.value("tolerance", c.verify.tolerance);
      c.verify.coefficient_tolerance = v.value("coefficient_tolerance", c.verify.coefficient_tolerance);
      c.verify.exponent_tolerance = v.value("exponent_tolerance", c.verify.exponent_tolerance);
      c.verify.im_exponent_tolerance = v.value("im_exponent_tolerance", c.verify.im_exponent_tolerance);
      c.verify.ladder_p = v.value("ladder_p", c.verify.ladder_p);
      c.verify.per_decade = v.value("per_decade", c.verify.per_decade);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const InvalidSpec& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
  return run_config_from_json(j);
}

}  // namespace momtail
