#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "momtail/asymptotics.hpp"
#include "momtail/momentum.hpp"

namespace momtail {

enum class Component { re, im, abs };

std::string_view to_string(Component component);

struct Window {
  double p_min = 0.0;
  double p_max = 0.0;
};

/// [3 p_scale, 1e3], the default tail window.
Window default_window(double p_scale);

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int count = 0;
};

/// Ordinary least squares of log y on log x; no refusal on poor fits.
/// Requires x, y > 0.
Regression log_log_regression(const std::vector<double>& x, const std::vector<double>& y);

struct FitResult {
  double exponent = 0.0;     // d log|phi| / d log p
  double coefficient = 0.0;  // p^m |phi| extrapolated to p -> infinity, m = -exponent rounded
  double r_squared = 0.0;
  Window window;
  int samples = 0;

  bool conclusive() const { return r_squared >= 0.999; }
};

/// Power-law fit of the selected component inside the window.
///
/// The exponent is the log-log slope. When it is within 0.25 of an integer m,
/// the coefficient is the intercept of p^m |phi| regressed linearly on p^-2,
/// which removes the leading correction of the asymptotic series; otherwise
/// it is exp(log intercept). Throws InvalidSpec with fewer than 20 samples,
/// NonPowerLaw for zeros in the data or r^2 < 0.99.
FitResult fit_power_law(const MomentumSamples& samples, Component component, Window window);

struct Agreement {
  int predicted_exponent = 0;
  double predicted_coefficient = 0.0;
  double max_relative_deviation = 0.0;  // max | |phi| / |leading sum| - 1 |
  double worst_p = 0.0;
  int samples = 0;
  Window window;
  std::optional<FitResult> fit;             // set when the fit is conclusive
  std::optional<double> exponent_deviation;  // fitted + predicted exponent
};

/// Pointwise comparison of the selected component of phi against the same
/// component of the phase-summed leading prediction.
Agreement compare(const TailPrediction& prediction, const MomentumSamples& samples, Window window,
                  Component component = Component::abs);

}  // namespace momtail
