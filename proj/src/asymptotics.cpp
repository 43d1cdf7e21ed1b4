#include "momtail/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "momtail/error.hpp"

namespace momtail {

namespace {

std::complex<double> minus_i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

double location_tolerance(double a) { return 1e-12 * std::max(1.0, std::abs(a)); }

std::vector<double> unique_locations(const std::vector<DiscontinuityRecord>& records) {
  std::vector<double> out;
  for (const auto& r : records) {
    if (out.empty() || std::abs(out.back() - r.location) > location_tolerance(r.location)) {
      out.push_back(r.location);
    }
  }
  return out;
}

// psi'(a) by Richardson-extrapolated central differences of the evaluator.
double slope_at(const BoundState& state, double a) {
  const double h0 = 1e-3 * state.support.smooth_length;
  double d[3];
  for (int i = 0; i < 3; ++i) {
    const double h = h0 / (1 << i);
    d[i] = (state.psi(a + h) - state.psi(a - h)) / (2.0 * h);
  }
  const double r1 = (4.0 * d[1] - d[0]) / 3.0;
  const double r2 = (4.0 * d[2] - d[1]) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

bool negligible(double jump, const DerivativeJet& jet, int j) {
  const double scale = std::max(std::abs(jet.left.at(j)), std::abs(jet.right.at(j)));
  return std::abs(jump) <= 1e-10 * scale || std::abs(jump) <= 1e-300;
}

}  // namespace

std::complex<double> TailTerm::coefficient(const Units& units) const {
  return phase_prefactor * jump * std::pow(units.hbar, order) /
         std::sqrt(2.0 * std::numbers::pi * units.hbar);
}

std::complex<double> TailTerm::contribution(double p, const Units& units) const {
  return coefficient(units) * std::polar(1.0, -p * location / units.hbar) * std::pow(p, -order);
}

std::complex<double> TailPrediction::sum(double p, int max_order) const {
  std::complex<double> total = 0.0;
  for (const auto& t : terms) {
    if (t.order <= max_order) total += t.contribution(p, units);
  }
  return total;
}

double TailPrediction::leading_coefficient() const {
  double sum2 = 0.0;
  for (const auto& t : terms) {
    if (t.order == leading_exponent) sum2 += t.jump * t.jump;
  }
  return std::sqrt(sum2) * std::pow(units.hbar, leading_exponent) /
         std::sqrt(2.0 * std::numbers::pi * units.hbar);
}

std::vector<TailTerm> expansion_terms(const BoundState& state,
                                      const std::vector<DiscontinuityRecord>& records,
                                      int max_order) {
  if (max_order < 1) throw InvalidSpec("expansion order must be >= 1");
  std::vector<TailTerm> terms;
  for (double a : unique_locations(records)) {
    const DerivativeJet* jet = state.jet_at(a);
    if (jet == nullptr) {
      throw InsufficientDerivativeDepth("no derivative table entry at x = " + std::to_string(a));
    }
    if (jet->depth() < max_order - 1) {
      throw InsufficientDerivativeDepth("derivative table at x = " + std::to_string(a) +
                                        " has depth " + std::to_string(jet->depth()) + ", need " +
                                        std::to_string(max_order - 1));
    }
    for (int n = 1; n <= max_order; ++n) {
      double jump = jet->jump(n - 1);
      // Continuity of psi makes the order-1 term vanish identically.
      if (n == 1 || negligible(jump, *jet, n - 1)) jump = 0.0;
      terms.push_back({a, n, jump, minus_i_power(n)});
    }
  }
  return terms;
}

std::optional<PredictedJump> jump_from_potential(const DiscontinuityRecord& record,
                                                 const BoundState& state) {
  if (record.wall) return std::nullopt;
  const double kf = state.units.kinetic_factor();
  const double value = state.psi(record.location);
  if (record.order == -1) return PredictedJump{1, kf * record.jump * value};
  if (record.order < -1) throw InvalidSpec("discontinuity order must be >= -1");
  const double slope = slope_at(state, record.location);
  const double length = state.support.smooth_length;
  const double scale = std::max(std::abs(value), std::abs(slope) * length);
  if (scale <= 1e-300) {
    throw UnsupportedCase("psi and psi' both vanish at x = " + std::to_string(record.location));
  }
  if (std::abs(value) > 1e-9 * scale) return PredictedJump{record.order + 2, kf * record.jump * value};
  if (std::abs(slope) * length <= 1e-9 * std::max(1.0, scale)) {
    throw UnsupportedCase("psi and psi' both vanish at x = " + std::to_string(record.location));
  }
  return PredictedJump{record.order + 3, (record.order + 1) * kf * record.jump * slope};
}

TailPrediction predict_tail(const BoundState& state, const std::vector<DiscontinuityRecord>& records,
                            int max_order) {
  TailPrediction out;
  out.units = state.units;
  out.terms = expansion_terms(state, records, max_order);
  for (const auto& r : records) {
    const auto predicted = jump_from_potential(r, state);
    if (!predicted) continue;
    const DerivativeJet* jet = state.jet_at(r.location);
    if (jet == nullptr || jet->depth() < predicted->derivative_order) {
      throw InsufficientDerivativeDepth("derivative table too short for the jump check");
    }
    const double tabulated = jet->jump(predicted->derivative_order);
    const double tol = 1e-8 * std::max(1.0, std::abs(predicted->jump));
    if (std::abs(tabulated - predicted->jump) > tol) {
      throw InconsistentJumps("jump of psi^(" + std::to_string(predicted->derivative_order) +
                              ") at x = " + std::to_string(r.location) + ": table " +
                              std::to_string(tabulated) + ", potential " +
                              std::to_string(predicted->jump));
    }
  }
  out.leading_exponent = 0;
  for (const auto& t : out.terms) {
    if (t.jump != 0.0 && (out.leading_exponent == 0 || t.order < out.leading_exponent)) {
      out.leading_exponent = t.order;
    }
  }
  return out;
}

int expected_leading_exponent(const BoundState& state,
                              const std::vector<DiscontinuityRecord>& records) {
  int best = 0;
  for (const auto& r : records) {
    int e = 0;
    if (r.wall) {
      e = 2;
    } else {
      const double value = state.psi(r.location);
      const double slope = slope_at(state, r.location);
      const bool vanishes = std::abs(value) <= 1e-9 * std::abs(slope) * state.support.smooth_length;
      e = r.order + (vanishes ? 4 : 3);
    }
    if (best == 0 || e < best) best = e;
  }
  return best;
}

}  // namespace momtail
