#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "momtail/units.hpp"

namespace momtail {

// Attractive point interaction  -strength * delta(x - location).
struct Delta {
  double strength = 0.0;
  double location = 0.0;
};

// Step  height * Theta(x - location).
struct Step {
  double height = 0.0;
  double location = 0.0;
};

struct DeltaSum {
  std::vector<Delta> deltas;
};

// Infinite walls outside (0, width).
struct InfiniteWell {
  double width = 1.0;
};

// -depth on (left, right), zero elsewhere.
struct FiniteWell {
  double depth = 1.0;
  double left = -1.0;
  double right = 1.0;
};

struct StepSum {
  std::vector<Step> steps;
};

// -strength * delta(x) + step_height * Theta(x - step_location).
struct HybridDeltaStep {
  double strength = 1.0;
  double step_height = 0.0;
  double step_location = 1.0;
};

// force * z above an infinite floor at z = 0.
struct Bouncer {
  double force = 0.5;
};

// force * |z|.
struct SymmetricLinear {
  double force = 0.5;
};

// force_right * z for z > 0, force_left * |z| for z < 0.
struct AsymmetricLinear {
  double force_right = 0.5;
  double force_left = 0.5;
};

using PotentialKind = std::variant<DeltaSum, InfiniteWell, FiniteWell, StepSum, HybridDeltaStep,
                                   Bouncer, SymmetricLinear, AsymmetricLinear>;

/// Immutable description of one catalog potential together with its units.
/// The constructor validates the parameters and throws InvalidSpec.
class PotentialSpec {
 public:
  explicit PotentialSpec(PotentialKind kind, Units units = {});

  const PotentialKind& kind() const { return kind_; }
  const Units& units() const { return units_; }
  std::string_view kind_name() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&kind_);
  }

 private:
  PotentialKind kind_;
  Units units_;
};

/// Discontinuity of order k at a location.
///
/// order == -1 encodes a delta singularity (jump holds the delta coefficient,
/// negative for attraction) or, with wall set, an infinite wall.
/// order >= 0 records V^(k)(a+) - V^(k)(a-) in jump.
struct DiscontinuityRecord {
  double location = 0.0;
  int order = 0;
  double jump = 0.0;
  bool wall = false;

  friend bool operator==(const DiscontinuityRecord&, const DiscontinuityRecord&) = default;
};

/// Full discontinuity ledger, sorted by location then order.
std::vector<DiscontinuityRecord> discontinuities(const PotentialSpec& spec);

/// Pointwise V(x); std::nullopt inside an infinite wall. Delta terms are not
/// part of the pointwise value. At a step the right-hand value is returned.
std::optional<double> evaluate(const PotentialSpec& spec, double x);

/// rho = (hbar^2 / (2 m F))^{1/3}, the natural length of a linear potential.
double airy_length(double force, const Units& units);

/// E_0 = F rho, the natural energy of a linear potential.
double airy_energy(double force, const Units& units);

}  // namespace momtail
