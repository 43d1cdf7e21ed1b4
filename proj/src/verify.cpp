#include "momtail/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "momtail/asymptotics.hpp"
#include "momtail/error.hpp"
#include "momtail/momentum.hpp"
#include "momtail/serialize.hpp"
#include "momtail/tailfit.hpp"

namespace momtail {

using nlohmann::json;

namespace {

// Smallest order whose coefficient has a nonzero real (or imaginary) part.
int component_order(const TailPrediction& prediction, Component component) {
  int best = 0;
  for (const auto& t : prediction.terms) {
    if (t.jump == 0.0) continue;
    const auto c = t.phase_prefactor;
    const bool present = component == Component::re ? c.real() != 0.0 : c.imag() != 0.0;
    if (present && (best == 0 || t.order < best)) best = t.order;
  }
  return best;
}

double component_coefficient(const TailPrediction& prediction, int order) {
  double c = 0.0;
  for (const auto& t : prediction.terms) {
    if (t.order == order) c += std::abs(t.coefficient(prediction.units));
  }
  return c;
}

json fit_check(const std::string& name, const MomentumSamples& samples, Component component,
               Window window, int order, double coefficient, double exponent_tol, double coefficient_tol) {
  json check = {{"name", name},
                {"component", std::string(to_string(component))},
                {"predicted_exponent", -order},
                {"predicted_coefficient", coefficient},
                {"window", {window.p_min, window.p_max}},
                {"gating", true}};
  try {
    const FitResult fit = fit_power_law(samples, component, window);
    const double de = std::abs(fit.exponent + order);
    const double dc = std::abs(fit.coefficient / coefficient - 1.0);
    check["fit"] = to_json(fit);
    check["exponent_deviation"] = de;
    check["coefficient_deviation"] = dc;
    check["passed"] = de <= exponent_tol && dc <= coefficient_tol;
  } catch (const Error& e) {
    check["error"] = e.what();
    check["passed"] = false;
  }
  return check;
}

}  // namespace

json verify_report(const PotentialSpec& spec, const BoundState& state, const VerifyOptions& options) {
  json report;
  report["potential"] = to_json(spec);
  report["state"] = {{"n", state.index},
                     {"parity", std::string(to_string(state.parity))},
                     {"energy", state.energy},
                     {"momentum_scale", state.momentum_scale}};
  json checks = json::array();
  const auto records = discontinuities(spec);

  TailPrediction prediction;
  {
    json check = {{"name", "jump_consistency"}, {"gating", true}};
    try {
      prediction = predict_tail(state, records);
      check["passed"] = true;
    } catch (const Error& e) {
      check["passed"] = false;
      check["error"] = e.what();
      prediction.units = state.units;
      prediction.terms = expansion_terms(state, records);
      for (const auto& t : prediction.terms) {
        if (t.jump != 0.0 && (prediction.leading_exponent == 0 || t.order < prediction.leading_exponent)) {
          prediction.leading_exponent = t.order;
        }
      }
    }
    checks.push_back(check);
  }
  const int expected = expected_leading_exponent(state, records);
  checks.push_back({{"name", "exponent_rule"},
                    {"gating", true},
                    {"expected", expected},
                    {"tabulated", prediction.leading_exponent},
                    {"passed", expected == prediction.leading_exponent}});

  std::set<double> leading_locations;
  std::set<double> locations;
  for (const auto& t : prediction.terms) {
    if (t.jump == 0.0) continue;
    locations.insert(t.location);
    if (t.order == prediction.leading_exponent) leading_locations.insert(t.location);
  }
  report["prediction"] = {{"leading_exponent", prediction.leading_exponent},
                          {"leading_coefficient", prediction.leading_coefficient()},
                          {"locations", std::vector<double>(leading_locations.begin(), leading_locations.end())}};

  const double p_scale = state.momentum_scale;
  const Window window = options.window.value_or(default_window(p_scale));
  if (locations.size() == 1) {
    const Window im_window = options.im_window.value_or(Window{3.0 * p_scale, 300.0});
    const double lo = std::min(window.p_min, im_window.p_min);
    const double hi = std::max(window.p_max, im_window.p_max);
    const MomentumSamples samples = transform(spec, state, log_grid(lo, hi, options.per_decade));
    const bool at_origin = *leading_locations.begin() == 0.0;
    if (at_origin) {
      // With a = 0 each order is purely real or purely imaginary.
      for (Component c : {Component::re, Component::im}) {
        const int order = component_order(prediction, c);
        if (order == 0) continue;
        const bool leading = order == prediction.leading_exponent;
        const Window w = leading ? window : im_window;
        const double tol = leading ? options.exponent_tolerance : options.im_exponent_tolerance;
        checks.push_back(fit_check(std::string("fit_") + std::string(to_string(c)), samples, c, w, order,
                                   component_coefficient(prediction, order), tol,
                                   leading ? options.coefficient_tolerance : INFINITY));
      }
    } else {
      checks.push_back(fit_check("fit_abs", samples, Component::abs, window, prediction.leading_exponent,
                                 prediction.leading_coefficient(), options.exponent_tolerance,
                                 options.coefficient_tolerance));
    }
    const Agreement a = compare(prediction, samples, window, Component::abs);
    json check = to_json(a);
    check["name"] = "pointwise_envelope";
    check["gating"] = false;
    check["tolerance"] = options.tolerance;
    check["passed"] = a.max_relative_deviation <= options.tolerance;
    checks.push_back(check);
  } else {
    // Term ladder at the first two nonzero orders.
    std::vector<int> orders;
    for (const auto& t : prediction.terms) {
      if (t.jump != 0.0 && std::find(orders.begin(), orders.end(), t.order) == orders.end()) orders.push_back(t.order);
    }
    std::sort(orders.begin(), orders.end());
    if (orders.size() > 2) orders.resize(2);
    const PhiFunction phi = phi_function(spec, state);
    for (int order : orders) {
      // Largest order-n sum relative to its terms in [ladder_p, 1.1 ladder_p],
      // which steps off interference minima.
      double p = options.ladder_p;
      double best = -1.0;
      for (int j = 0; j <= 200; ++j) {
        const double trial = options.ladder_p * (1.0 + 0.1 * j / 200.0);
        double sum_abs = 0.0;
        for (const auto& t : prediction.terms) {
          if (t.order == order) sum_abs += std::abs(t.contribution(trial, prediction.units));
        }
        const double size = std::abs(prediction.sum(trial, order) - prediction.sum(trial, order - 1));
        if (sum_abs > 0.0 && size / sum_abs > best) {
          best = size / sum_abs;
          p = trial;
        }
        if (best >= 0.99) break;
      }
      const auto value = phi(p);
      const auto lower = prediction.sum(p, order - 1);
      const auto term = prediction.sum(p, order) - lower;
      const double dev = std::abs(value - lower - term) / std::abs(term);
      checks.push_back({{"name", "term_ladder_order_" + std::to_string(order)},
                        {"gating", true},
                        {"p", p},
                        {"isolated_re", (value - lower).real()},
                        {"isolated_im", (value - lower).imag()},
                        {"predicted_re", term.real()},
                        {"predicted_im", term.imag()},
                        {"relative_deviation", dev},
                        {"tolerance", options.tolerance},
                        {"passed", dev <= options.tolerance}});
    }
  }
  bool passed = true;
  for (const auto& c : checks) {
    if (c.value("gating", true) && !c.value("passed", false)) passed = false;
  }
  report["checks"] = checks;
  report["passed"] = passed;
  return report;
}

}  // namespace momtail
