#include "momtail/tailfit.hpp"

#include <cmath>
#include <string>

#include "momtail/error.hpp"

namespace momtail {

std::string_view to_string(Component component) {
  switch (component) {
    case Component::re: return "re";
    case Component::im: return "im";
    case Component::abs: return "abs";
  }
  return "abs";
}

Window default_window(double p_scale) { return {3.0 * p_scale, 1e3}; }

namespace {

struct Line {
  double slope;
  double intercept;
  double r_squared;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return {slope, my - slope * mx, r2};
}

double component_value(std::complex<double> v, Component c) {
  switch (c) {
    case Component::re: return std::abs(v.real());
    case Component::im: return std::abs(v.imag());
    case Component::abs: return std::abs(v);
  }
  return std::abs(v);
}

}  // namespace

Regression log_log_regression(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidSpec("regression needs >= 2 paired samples");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidSpec("log-log regression needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const Line line = least_squares(lx, ly);
  return {line.slope, line.intercept, line.r_squared, static_cast<int>(x.size())};
}

FitResult fit_power_law(const MomentumSamples& samples, Component component, Window window) {
  std::vector<double> p, v;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double g = samples.grid[i];
    if (g < window.p_min || g > window.p_max) continue;
    p.push_back(g);
    v.push_back(component_value(samples.phi(i), component));
  }
  if (p.size() < 20) {
    throw InvalidSpec("power-law fit needs >= 20 samples in the window, got " + std::to_string(p.size()));
  }
  for (double x : v) {
    if (!(x > 0.0)) throw NonPowerLaw("component vanishes inside the fit window");
  }
  const Regression reg = log_log_regression(p, v);
  FitResult fit;
  fit.exponent = reg.slope;
  fit.r_squared = reg.r_squared;
  fit.window = window;
  fit.samples = reg.count;
  if (reg.r_squared < 0.99) {
    throw NonPowerLaw("r^2 = " + std::to_string(reg.r_squared) + " below 0.99");
  }
  const double m = std::round(-reg.slope);
  if (std::abs(reg.slope + m) <= 0.25) {
    std::vector<double> x(p.size()), y(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      x[i] = 1.0 / (p[i] * p[i]);
      y[i] = std::pow(p[i], m) * v[i];
    }
    fit.coefficient = least_squares(x, y).intercept;
  } else {
    fit.coefficient = std::exp(reg.intercept);
  }
  return fit;
}

Agreement compare(const TailPrediction& prediction, const MomentumSamples& samples, Window window,
                  Component component) {
  Agreement out;
  out.predicted_exponent = prediction.leading_exponent;
  out.predicted_coefficient = prediction.leading_coefficient();
  out.window = window;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double p = samples.grid[i];
    if (p < window.p_min || p > window.p_max) continue;
    const double predicted = component_value(prediction.leading_sum(p), component);
    const double actual = component_value(samples.phi(i), component);
    ++out.samples;
    const double dev = predicted > 0.0 ? std::abs(actual / predicted - 1.0) : INFINITY;
    if (dev > out.max_relative_deviation || out.samples == 1) {
      out.max_relative_deviation = dev;
      out.worst_p = p;
    }
  }
  try {
    FitResult fit = fit_power_law(samples, component, window);
    if (fit.conclusive()) {
      out.exponent_deviation = fit.exponent + prediction.leading_exponent;
      out.fit = fit;
    }
  } catch (const Error&) {
    // Oscillating or sparse data: the pointwise comparison stands alone.
  }
  return out;
}

}  // namespace momtail
