#include "momtail/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "momtail/error.hpp"

namespace momtail {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidSpec(message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void validate(const PotentialKind& kind, const Units& units) {
  require(positive(units.hbar) && positive(units.mass), "hbar and mass must be positive");
  std::visit(
      Overloaded{
          [](const DeltaSum& d) {
            require(!d.deltas.empty(), "DeltaSum needs at least one delta");
            for (std::size_t i = 0; i < d.deltas.size(); ++i) {
              require(positive(d.deltas[i].strength), "delta strengths must be positive");
              require(std::isfinite(d.deltas[i].location), "delta location must be finite");
              if (i > 0) {
                require(d.deltas[i].location > d.deltas[i - 1].location,
                        "delta locations must be strictly increasing");
              }
            }
          },
          [](const InfiniteWell& w) { require(positive(w.width), "well width must be positive"); },
          [](const FiniteWell& w) {
            require(positive(w.depth), "well depth must be positive");
            require(std::isfinite(w.left) && std::isfinite(w.right) && w.left < w.right,
                    "finite well needs left < right");
          },
          [](const StepSum& s) {
            require(!s.steps.empty(), "StepSum needs at least one step");
            for (std::size_t i = 0; i < s.steps.size(); ++i) {
              require(std::isfinite(s.steps[i].height) && s.steps[i].height != 0.0,
                      "step heights must be finite and nonzero");
              require(std::isfinite(s.steps[i].location), "step location must be finite");
              if (i > 0) {
                require(s.steps[i].location > s.steps[i - 1].location,
                        "step locations must be strictly increasing");
              }
            }
          },
          [](const HybridDeltaStep& h) {
            require(positive(h.strength), "delta strength must be positive");
            require(positive(h.step_location), "step location must be positive");
            require(std::isfinite(h.step_height), "step height must be finite");
          },
          [](const Bouncer& b) { require(positive(b.force), "force must be positive"); },
          [](const SymmetricLinear& s) { require(positive(s.force), "force must be positive"); },
          [](const AsymmetricLinear& a) {
            require(positive(a.force_right) && positive(a.force_left), "forces must be positive");
          },
      },
      kind);
}

}  // namespace

PotentialSpec::PotentialSpec(PotentialKind kind, Units units)
    : kind_(std::move(kind)), units_(units) {
  validate(kind_, units_);
}

std::string_view PotentialSpec::kind_name() const {
  return std::visit(Overloaded{
                        [](const DeltaSum&) { return std::string_view("DeltaSum"); },
                        [](const InfiniteWell&) { return std::string_view("InfiniteWell"); },
                        [](const FiniteWell&) { return std::string_view("FiniteWell"); },
                        [](const StepSum&) { return std::string_view("StepSum"); },
                        [](const HybridDeltaStep&) { return std::string_view("HybridDeltaStep"); },
                        [](const Bouncer&) { return std::string_view("Bouncer"); },
                        [](const SymmetricLinear&) { return std::string_view("SymmetricLinear"); },
                        [](const AsymmetricLinear&) { return std::string_view("AsymmetricLinear"); },
                    },
                    kind_);
}

std::vector<DiscontinuityRecord> discontinuities(const PotentialSpec& spec) {
  std::vector<DiscontinuityRecord> records = std::visit(
      Overloaded{
          [](const DeltaSum& d) {
            std::vector<DiscontinuityRecord> out;
            for (const auto& delta : d.deltas) out.push_back({delta.location, -1, -delta.strength});
            return out;
          },
          [](const InfiniteWell& w) {
            return std::vector<DiscontinuityRecord>{{0.0, -1, 0.0, true}, {w.width, -1, 0.0, true}};
          },
          [](const FiniteWell& w) {
            return std::vector<DiscontinuityRecord>{{w.left, 0, -w.depth}, {w.right, 0, w.depth}};
          },
          [](const StepSum& s) {
            std::vector<DiscontinuityRecord> out;
            for (const auto& step : s.steps) out.push_back({step.location, 0, step.height});
            return out;
          },
          [](const HybridDeltaStep& h) {
            std::vector<DiscontinuityRecord> out{{0.0, -1, -h.strength}};
            if (h.step_height != 0.0) out.push_back({h.step_location, 0, h.step_height});
            return out;
          },
          [](const Bouncer&) { return std::vector<DiscontinuityRecord>{{0.0, -1, 0.0, true}}; },
          [](const SymmetricLinear& s) {
            return std::vector<DiscontinuityRecord>{{0.0, 1, 2.0 * s.force}};
          },
          [](const AsymmetricLinear& a) {
            return std::vector<DiscontinuityRecord>{{0.0, 1, a.force_right + a.force_left}};
          },
      },
      spec.kind());
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.location < b.location || (a.location == b.location && a.order < b.order);
  });
  return records;
}

std::optional<double> evaluate(const PotentialSpec& spec, double x) {
  return std::visit(
      Overloaded{
          [](const DeltaSum&) -> std::optional<double> { return 0.0; },
          [x](const InfiniteWell& w) -> std::optional<double> {
            if (x < 0.0 || x > w.width) return std::nullopt;
            return 0.0;
          },
          [x](const FiniteWell& w) -> std::optional<double> {
            return (x >= w.left && x < w.right) ? -w.depth : 0.0;
          },
          [x](const StepSum& s) -> std::optional<double> {
            double v = 0.0;
            for (const auto& step : s.steps) {
              if (x >= step.location) v += step.height;
            }
            return v;
          },
          [x](const HybridDeltaStep& h) -> std::optional<double> {
            return x >= h.step_location ? h.step_height : 0.0;
          },
          [x](const Bouncer& b) -> std::optional<double> {
            if (x < 0.0) return std::nullopt;
            return b.force * x;
          },
          [x](const SymmetricLinear& s) -> std::optional<double> { return s.force * std::abs(x); },
          [x](const AsymmetricLinear& a) -> std::optional<double> {
            return x >= 0.0 ? a.force_right * x : -a.force_left * x;
          },
      },
      spec.kind());
}

double airy_length(double force, const Units& units) {
  return std::cbrt(units.hbar * units.hbar / (2.0 * units.mass * force));
}

double airy_energy(double force, const Units& units) { return force * airy_length(force, units); }

}  // namespace momtail
