#include "momtail/serialize.hpp"

#include <cstdio>
#include <ostream>

#include "momtail/error.hpp"

namespace momtail {

using nlohmann::json;

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_samples_csv(std::ostream& out, const MomentumSamples& samples,
                       const std::vector<ExtraColumn>& extra) {
  out << "p,phi_re,phi_im,abs_phi2";
  for (const auto& [name, values] : extra) {
    if (values.size() != samples.size()) throw InvalidSpec("extra column '" + name + "' has wrong length");
    out << ',' << name;
  }
  out << '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << format_number(samples.grid[i]) << ',' << format_number(samples.phi_re[i]) << ','
        << format_number(samples.phi_im[i]) << ',' << format_number(samples.abs2(i));
    for (const auto& column : extra) out << ',' << format_number(column.second[i]);
    out << '\n';
  }
}

void write_prediction_csv(std::ostream& out, const TailPrediction& prediction) {
  out << "order,location,jump,coefficient_re,coefficient_im\n";
  for (const auto& t : prediction.terms) {
    const auto c = t.coefficient(prediction.units);
    out << t.order << ',' << format_number(t.location) << ',' << format_number(t.jump) << ','
        << format_number(c.real()) << ',' << format_number(c.imag()) << '\n';
  }
}

namespace {

double number(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing parameter '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.is_object() && j.contains(key) ? number(j, key) : fallback;
}

const json& array(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    throw ConfigError(std::string("parameter '") + key + "' must be an array");
  }
  return j.at(key);
}

}  // namespace

PotentialSpec potential_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("potential must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ConfigError("potential needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.contains("parameters") ? j.at("parameters") : json::object();
  if (!params.is_object()) throw ConfigError("'parameters' must be an object");
  Units units;
  units.hbar = number_or(j, "hbar", 1.0);
  units.mass = number_or(j, "mass", 1.0);

  if (kind == "DeltaSum") {
    DeltaSum d;
    for (const auto& e : array(params, "deltas")) d.deltas.push_back({number(e, "strength"), number(e, "location")});
    return PotentialSpec(d, units);
  }
  if (kind == "InfiniteWell") return PotentialSpec(InfiniteWell{number(params, "width")}, units);
  if (kind == "FiniteWell") {
    return PotentialSpec(FiniteWell{number(params, "depth"), number(params, "left"), number(params, "right")}, units);
  }
  if (kind == "StepSum") {
    StepSum s;
    for (const auto& e : array(params, "steps")) s.steps.push_back({number(e, "height"), number(e, "location")});
    return PotentialSpec(s, units);
  }
  if (kind == "HybridDeltaStep") {
    return PotentialSpec(HybridDeltaStep{number(params, "strength"), number(params, "step_height"),
                                         number(params, "step_location")},
                         units);
  }
  if (kind == "Bouncer") return PotentialSpec(Bouncer{number(params, "force")}, units);
  if (kind == "SymmetricLinear") return PotentialSpec(SymmetricLinear{number(params, "force")}, units);
  if (kind == "AsymmetricLinear") {
    return PotentialSpec(AsymmetricLinear{number(params, "force_right"), number(params, "force_left")}, units);
  }
  throw ConfigError("unknown potential kind '" + kind + "'");
}

json to_json(const PotentialSpec& spec) {
  json params = json::object();
  if (const auto* d = spec.get_if<DeltaSum>()) {
    params["deltas"] = json::array();
    for (const auto& e : d->deltas) params["deltas"].push_back({{"strength", e.strength}, {"location", e.location}});
  } else if (const auto* w = spec.get_if<InfiniteWell>()) {
    params["width"] = w->width;
  } else if (const auto* f = spec.get_if<FiniteWell>()) {
    params = {{"depth", f->depth}, {"left", f->left}, {"right", f->right}};
  } else if (const auto* s = spec.get_if<StepSum>()) {
    params["steps"] = json::array();
    for (const auto& e : s->steps) params["steps"].push_back({{"height", e.height}, {"location", e.location}});
  } else if (const auto* h = spec.get_if<HybridDeltaStep>()) {
    params = {{"strength", h->strength}, {"step_height", h->step_height}, {"step_location", h->step_location}};
  } else if (const auto* b = spec.get_if<Bouncer>()) {
    params["force"] = b->force;
  } else if (const auto* l = spec.get_if<SymmetricLinear>()) {
    params["force"] = l->force;
  } else if (const auto* a = spec.get_if<AsymmetricLinear>()) {
    params = {{"force_right", a->force_right}, {"force_left", a->force_left}};
  }
  return {{"kind", std::string(spec.kind_name())},
          {"parameters", params},
          {"hbar", spec.units().hbar},
          {"mass", spec.units().mass}};
}

json to_json(const DerivativeJet& jet) {
  return {{"location", jet.location}, {"left", jet.left}, {"right", jet.right}};
}

json to_json(const FitResult& fit) {
  return {{"exponent", fit.exponent},
          {"coefficient", fit.coefficient},
          {"r_squared", fit.r_squared},
          {"conclusive", fit.conclusive()},
          {"window", {fit.window.p_min, fit.window.p_max}},
          {"samples", fit.samples}};
}

json to_json(const Agreement& a) {
  json j = {{"predicted_exponent", a.predicted_exponent},
            {"predicted_coefficient", a.predicted_coefficient},
            {"max_relative_deviation", a.max_relative_deviation},
            {"worst_p", a.worst_p},
            {"samples", a.samples},
            {"window", {a.window.p_min, a.window.p_max}}};
  if (a.fit) j["fit"] = to_json(*a.fit);
  if (a.exponent_deviation) j["exponent_deviation"] = *a.exponent_deviation;
  return j;
}

Parity parse_parity(const std::string& text) {
  if (text == "even") return Parity::even;
  if (text == "odd") return Parity::odd;
  if (text == "none") return Parity::none;
  throw ConfigError("parity must be 'even' or 'odd', got '" + text + "'");
}

}  // namespace momtail
