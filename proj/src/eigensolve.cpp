#include "momtail/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "momtail/error.hpp"
#include "momtail/gauss_legendre.hpp"
#include "momtail/specfun.hpp"

namespace momtail {

std::string_view to_string(Parity parity) {
  switch (parity) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "none";
}

const DerivativeJet* BoundState::jet_at(double location) const {
  for (const auto& jet : derivative_table) {
    if (std::abs(jet.location - location) <= 1e-12 * std::max(1.0, std::abs(location))) return &jet;
  }
  return nullptr;
}

namespace {

// Decay length multiplier: e^{-42} ~ 6e-19.
constexpr double kTailDecades = 42.0;
// Ai(t) < 1e-18 of its peak for t beyond this.
constexpr double kAiryTail = 16.0;

// ---------------------------------------------------------------------------
// Airy derivatives: Ai^(j)(t) = P_j(t) Ai(t) + Q_j(t) Ai'(t), from Ai'' = t Ai.

std::vector<double> airy_derivatives(double t, double ai, double aip, int depth) {
  std::vector<double> p{1.0};  // polynomial coefficients in t
  std::vector<double> q{0.0};
  auto eval = [t](const std::vector<double>& c) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  };
  auto derivative = [](const std::vector<double>& c) {
    std::vector<double> d(std::max<std::size_t>(c.size(), 2) - 1, 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = i * c[i];
    return d;
  };
  auto add = [](std::vector<double> a, const std::vector<double>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
  };
  auto times_t = [](const std::vector<double>& c) {
    std::vector<double> out(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i];
    return out;
  };
  std::vector<double> out;
  out.reserve(depth + 1);
  for (int j = 0; j <= depth; ++j) {
    out.push_back(eval(p) * ai + eval(q) * aip);
    auto next_p = add(derivative(p), times_t(q));
    auto next_q = add(p, derivative(q));
    p = std::move(next_p);
    q = std::move(next_q);
  }
  return out;
}

// d^j/dz^j of A Ai(s z / rho - c) at z = 0, s = +-1.
std::vector<double> airy_jet(double amplitude, double rho, double sign, double shift, double ai,
                             double aip) {
  auto d = airy_derivatives(-shift, ai, aip, kDerivativeDepth);
  double factor = amplitude;
  for (auto& v : d) {
    v *= factor;
    factor *= sign / rho;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Piecewise-constant potentials with point interactions.

struct PiecewiseProblem {
  std::vector<double> points;      // interfaces x_0 < ... < x_{m-1}
  std::vector<double> potential;   // m + 1 region values
  std::vector<double> attraction;  // delta strength g at each interface
  Units units;
};

PiecewiseProblem make_piecewise(const PotentialSpec& spec) {
  PiecewiseProblem p;
  p.units = spec.units();
  if (const auto* d = spec.get_if<DeltaSum>()) {
    for (const auto& delta : d->deltas) {
      p.points.push_back(delta.location);
      p.attraction.push_back(delta.strength);
    }
    p.potential.assign(p.points.size() + 1, 0.0);
  } else if (const auto* w = spec.get_if<FiniteWell>()) {
    p.points = {w->left, w->right};
    p.attraction = {0.0, 0.0};
    p.potential = {0.0, -w->depth, 0.0};
  } else if (const auto* s = spec.get_if<StepSum>()) {
    double v = 0.0;
    p.potential.push_back(v);
    for (const auto& step : s->steps) {
      p.points.push_back(step.location);
      p.attraction.push_back(0.0);
      v += step.height;
      p.potential.push_back(v);
    }
  } else if (const auto* h = spec.get_if<HybridDeltaStep>()) {
    p.points.push_back(0.0);
    p.attraction.push_back(h->strength);
    p.potential.push_back(0.0);
    p.potential.push_back(0.0);
    if (h->step_height != 0.0) {
      p.points.push_back(h->step_location);
      p.attraction.push_back(0.0);
      p.potential.push_back(h->step_height);
    }
  } else {
    throw InvalidSpec(std::string("not a piecewise-constant potential: ") +
                      std::string(spec.kind_name()));
  }
  return p;
}

enum class RegionKind { evanescent, oscillatory, flat };

// psi on one region, parameterized by value and slope at an anchor point.
struct Region {
  RegionKind kind = RegionKind::flat;
  double anchor = 0.0;
  double value = 0.0;
  double slope = 0.0;
  double wavenumber = 0.0;
  // Outer regions only: +1 grows to the right (left tail), -1 decays (right tail).
  int outer = 0;

  double derivative(double x, int order) const {
    const double u = x - anchor;
    if (outer != 0) {
      const double k = outer * wavenumber;
      return std::pow(k, order) * value * std::exp(k * u);
    }
    switch (kind) {
      case RegionKind::evanescent: {
        const double ku = wavenumber * u;
        const double c = std::cosh(ku);
        const double s = std::sinh(ku);
        const double even = order % 2 == 0 ? c : s;
        const double odd = order % 2 == 0 ? s : c;
        return std::pow(wavenumber, order) * (value * even + slope / wavenumber * odd);
      }
      case RegionKind::oscillatory: {
        const double ku = wavenumber * u;
        const double c = std::cos(ku);
        const double s = std::sin(ku);
        // d^j cos = cos(ku + j pi/2), d^j sin = sin(ku + j pi/2)
        double cj = c, sj = s;
        switch (order % 4) {
          case 1: cj = -s; sj = c; break;
          case 2: cj = -c; sj = -s; break;
          case 3: cj = s; sj = -c; break;
          default: break;
        }
        return std::pow(wavenumber, order) * (value * cj + slope / wavenumber * sj);
      }
      case RegionKind::flat:
        if (order == 0) return value + slope * u;
        return order == 1 ? slope : 0.0;
    }
    return 0.0;
  }

  // int psi^2 over [anchor, anchor + width] (middle regions).
  double norm_squared(double width) const {
    const double a = value;
    switch (kind) {
      case RegionKind::evanescent: {
        const double k = wavenumber;
        const double b = slope / k;
        // psi = a cosh(ku) + b sinh(ku)
        const double x = 2.0 * k * width;
        const double sinh2 = std::sinh(x);
        const double cosh2m1 = 2.0 * std::sinh(k * width) * std::sinh(k * width);
        return 0.5 * (a * a - b * b) * width + (a * a + b * b) * sinh2 / (4.0 * k) +
               a * b * cosh2m1 / (2.0 * k);
      }
      case RegionKind::oscillatory: {
        const double k = wavenumber;
        const double b = slope / k;
        const double s2 = std::sin(2.0 * k * width);
        const double sk = std::sin(k * width);
        return a * a * (0.5 * width + s2 / (4.0 * k)) + b * b * (0.5 * width - s2 / (4.0 * k)) +
               a * b * sk * sk / k;
      }
      case RegionKind::flat:
        return a * a * width + a * slope * width * width + slope * slope * width * width * width / 3.0;
    }
    return 0.0;
  }
};

struct RegionShape {
  RegionKind kind;
  double wavenumber;
};

RegionShape shape(double potential, double energy, const Units& units) {
  const double d = units.kinetic_factor() * (potential - energy);
  if (d > 0.0) return {RegionKind::evanescent, std::sqrt(d)};
  if (d < 0.0) return {RegionKind::oscillatory, std::sqrt(-d)};
  return {RegionKind::flat, 0.0};
}

struct Vec2 {
  double value;
  double slope;
};

Vec2 propagate(Vec2 in, RegionShape s, double width) {
  switch (s.kind) {
    case RegionKind::evanescent: {
      const double c = std::cosh(s.wavenumber * width);
      const double sh = std::sinh(s.wavenumber * width);
      return {in.value * c + in.slope / s.wavenumber * sh, in.value * s.wavenumber * sh + in.slope * c};
    }
    case RegionKind::oscillatory: {
      const double c = std::cos(s.wavenumber * width);
      const double sn = std::sin(s.wavenumber * width);
      return {in.value * c + in.slope / s.wavenumber * sn, -in.value * s.wavenumber * sn + in.slope * c};
    }
    case RegionKind::flat:
      return {in.value + in.slope * width, in.slope};
  }
  return in;
}

Vec2 normalized(Vec2 v) {
  const double n = std::hypot(v.value, v.slope);
  return n > 0.0 ? Vec2{v.value / n, v.slope / n} : v;
}

// Matching defect psi'(x_last+) + kappa_right psi(x_last) for the solution that
// decays to the left; vanishes exactly at bound-state energies.
double mismatch(const PiecewiseProblem& p, double energy) {
  const Units& u = p.units;
  const double kappa_left = std::sqrt(u.kinetic_factor() * (p.potential.front() - energy));
  const double kappa_right = std::sqrt(u.kinetic_factor() * (p.potential.back() - energy));
  Vec2 v = normalized({1.0, kappa_left});
  const std::size_t m = p.points.size();
  for (std::size_t i = 0; i < m; ++i) {
    v.slope -= u.kinetic_factor() * p.attraction[i] * v.value;
    if (i + 1 < m) {
      v = normalized(propagate(v, shape(p.potential[i + 1], energy, u), p.points[i + 1] - p.points[i]));
    }
  }
  v = normalized(v);
  return v.slope + kappa_right * v.value;
}

struct EnergyWindow {
  double lo;
  double hi;
};

std::optional<EnergyWindow> energy_window(const PiecewiseProblem& p) {
  const double v_min = *std::min_element(p.potential.begin(), p.potential.end());
  double g_total = 0.0;
  for (double g : p.attraction) g_total += g;
  const double lo = v_min - p.units.mass * g_total * g_total / (2.0 * p.units.hbar * p.units.hbar);
  const double hi = std::min(p.potential.front(), p.potential.back());
  if (!(lo < hi)) return std::nullopt;
  return EnergyWindow{lo, hi};
}

double refine_root(const PiecewiseProblem& p, double lo, double hi) {
  double f_lo = mismatch(p, lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = mismatch(p, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) break;
  }
  // Two Newton polish steps, kept only if they stay bracketed and reduce the defect.
  double e = 0.5 * (lo + hi);
  for (int it = 0; it < 2; ++it) {
    const double f = mismatch(p, e);
    const double delta = 1e-7 * std::max(1.0, std::abs(e));
    const double df = (mismatch(p, e + delta) - mismatch(p, e - delta)) / (2.0 * delta);
    if (df == 0.0 || !std::isfinite(df)) break;
    const double next = e - f / df;
    if (next < lo || next > hi) break;
    if (std::abs(mismatch(p, next)) >= std::abs(f)) break;
    e = next;
  }
  return e;
}

std::vector<double> piecewise_roots(const PiecewiseProblem& p) {
  const auto window = energy_window(p);
  if (!window) return {};
  constexpr int kScan = 4000;
  const double span = window->hi - window->lo;
  // Quadratic spacing from the top concentrates samples below the continuum
  // threshold; quadratic from the bottom is uniform in wavenumber, which
  // resolves the nearly equally spaced levels of deep wells.
  std::vector<double> energies;
  for (int i = 1; i <= kScan; ++i) {
    const double t = static_cast<double>(i) / kScan;
    energies.push_back(window->hi - span * t * t);
    if (i < kScan) energies.push_back(window->lo + span * t * t);
  }
  std::sort(energies.begin(), energies.end(), std::greater<>());
  energies.erase(std::unique(energies.begin(), energies.end()), energies.end());

  std::vector<double> roots;
  double e_prev = energies.front();
  double f_prev = mismatch(p, e_prev);
  for (std::size_t i = 1; i < energies.size(); ++i) {
    const double e = energies[i];
    const double f = mismatch(p, e);
    if (f == 0.0) {
      roots.push_back(e);
    } else if ((f < 0.0) != (f_prev < 0.0) && f_prev != 0.0) {
      roots.push_back(refine_root(p, e, e_prev));
    }
    e_prev = e;
    f_prev = f;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool mirror_symmetric(const PiecewiseProblem& p) {
  const std::size_t m = p.points.size();
  const double center = 0.5 * (p.points.front() + p.points.back());
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = m - 1 - i;
    const double tol = 1e-12 * std::max(1.0, std::abs(p.points[i]));
    if (std::abs((p.points[i] - center) + (p.points[j] - center)) > tol) return false;
    if (p.attraction[i] != p.attraction[j]) return false;
  }
  for (std::size_t i = 0; i <= m; ++i) {
    if (p.potential[i] != p.potential[m - i]) return false;
  }
  return true;
}

struct PiecewiseState {
  std::vector<double> points;
  std::vector<Region> regions;  // m + 1
};

// Builds normalized region coefficients at an eigenvalue.
PiecewiseState build_piecewise_state(const PiecewiseProblem& p, double energy) {
  const Units& u = p.units;
  const std::size_t m = p.points.size();
  PiecewiseState st;
  st.points = p.points;
  st.regions.resize(m + 1);

  const double kappa_left = std::sqrt(u.kinetic_factor() * (p.potential.front() - energy));
  const double kappa_right = std::sqrt(u.kinetic_factor() * (p.potential.back() - energy));

  Region& left = st.regions.front();
  left.kind = RegionKind::evanescent;
  left.outer = +1;
  left.wavenumber = kappa_left;
  left.anchor = p.points.front();
  left.value = 1.0;
  left.slope = kappa_left;

  Vec2 v{1.0, kappa_left};
  for (std::size_t i = 0; i < m; ++i) {
    v.slope -= u.kinetic_factor() * p.attraction[i] * v.value;
    if (i + 1 < m) {
      const RegionShape s = shape(p.potential[i + 1], energy, u);
      Region& r = st.regions[i + 1];
      r.kind = s.kind;
      r.wavenumber = s.wavenumber;
      r.anchor = p.points[i];
      r.value = v.value;
      r.slope = v.slope;
      v = propagate(v, s, p.points[i + 1] - p.points[i]);
    }
  }
  Region& right = st.regions.back();
  right.kind = RegionKind::evanescent;
  right.outer = -1;
  right.wavenumber = kappa_right;
  right.anchor = p.points.back();
  right.value = v.value;
  right.slope = -kappa_right * v.value;

  double total = left.value * left.value / (2.0 * kappa_left) +
                 right.value * right.value / (2.0 * kappa_right);
  for (std::size_t i = 1; i < m; ++i) total += st.regions[i].norm_squared(p.points[i] - p.points[i - 1]);
  const double scale = 1.0 / std::sqrt(total);
  for (auto& r : st.regions) {
    r.value *= scale;
    r.slope *= scale;
  }
  return st;
}

BoundState piecewise_bound_state(const PiecewiseProblem& p, double energy, int index) {
  auto st = std::make_shared<const PiecewiseState>(build_piecewise_state(p, energy));
  BoundState out;
  out.energy = energy;
  out.index = index;
  out.units = p.units;
  out.parity = mirror_symmetric(p) ? (index % 2 == 0 ? Parity::even : Parity::odd) : Parity::none;
  out.psi = [st](double x) {
    const auto it = std::upper_bound(st->points.begin(), st->points.end(), x);
    const auto r = static_cast<std::size_t>(it - st->points.begin());
    return st->regions[r].derivative(x, 0);
  };
  const std::size_t m = p.points.size();
  for (std::size_t i = 0; i < m; ++i) {
    DerivativeJet jet;
    jet.location = p.points[i];
    for (int j = 0; j <= kDerivativeDepth; ++j) {
      jet.left.push_back(st->regions[i].derivative(p.points[i], j));
      jet.right.push_back(st->regions[i + 1].derivative(p.points[i], j));
    }
    // psi is continuous by construction; use a single value on both sides.
    jet.right[0] = jet.left[0];
    out.derivative_table.push_back(std::move(jet));
  }
  double k_max = 0.0;
  for (const auto& r : st->regions) k_max = std::max(k_max, r.wavenumber);
  for (double g : p.attraction) k_max = std::max(k_max, p.units.mass * g / (p.units.hbar * p.units.hbar));
  const double kl = st->regions.front().wavenumber;
  const double kr = st->regions.back().wavenumber;
  out.support.support_min = p.points.front() - kTailDecades / kl;
  out.support.support_max = p.points.back() + kTailDecades / kr;
  out.support.breakpoints = p.points;
  out.support.smooth_length = 1.0 / std::max(k_max, 1e-300);
  out.momentum_scale = p.units.hbar * k_max;
  return out;
}

BoundState solve_piecewise(const PotentialSpec& spec, int n) {
  if (n < 0) throw NoSuchState("state index must be >= 0");
  const auto p = make_piecewise(spec);
  const auto roots = piecewise_roots(p);
  if (roots.empty()) throw NoBoundState(std::string(spec.kind_name()) + ": no bound state");
  if (static_cast<std::size_t>(n) >= roots.size()) {
    throw NoSuchState(std::string(spec.kind_name()) + ": only " + std::to_string(roots.size()) +
                      " bound state(s), requested n = " + std::to_string(n));
  }
  return piecewise_bound_state(p, roots[n], n);
}

}  // namespace

// ---------------------------------------------------------------------------

BoundState solve_delta(const PotentialSpec& spec) {
  const auto* d = spec.get_if<DeltaSum>();
  if (d == nullptr || d->deltas.size() != 1) throw InvalidSpec("solve_delta needs a single delta");
  const Units u = spec.units();
  const double g = d->deltas[0].strength;
  const double a = d->deltas[0].location;
  const double k0 = u.mass * g / (u.hbar * u.hbar);
  const double amplitude = std::sqrt(k0);

  BoundState out;
  out.energy = -u.mass * g * g / (2.0 * u.hbar * u.hbar);
  out.index = 0;
  out.parity = Parity::even;
  out.units = u;
  out.psi = [=](double x) { return amplitude * std::exp(-k0 * std::abs(x - a)); };
  DerivativeJet jet;
  jet.location = a;
  double power = amplitude;
  for (int j = 0; j <= kDerivativeDepth; ++j) {
    jet.left.push_back(power);
    jet.right.push_back(j % 2 == 0 ? power : -power);
    power *= k0;
  }
  out.derivative_table.push_back(std::move(jet));
  out.support = {a - kTailDecades / k0, a + kTailDecades / k0, {a}, 1.0 / k0};
  out.momentum_scale = u.hbar * k0;
  return out;
}

BoundState solve_delta_sum(const PotentialSpec& spec, int n) {
  if (spec.get_if<DeltaSum>() == nullptr) throw InvalidSpec("solve_delta_sum needs a DeltaSum");
  return solve_piecewise(spec, n);
}

BoundState solve_infinite_well(double width, int n, const Units& units) {
  if (!(width > 0.0)) throw InvalidSpec("infinite well width must be positive");
  if (n < 1) throw NoSuchState("infinite well states start at n = 1");
  const double k = n * std::numbers::pi / width;
  const double amplitude = std::sqrt(2.0 / width);

  BoundState out;
  out.energy = units.hbar * units.hbar * k * k / (2.0 * units.mass);
  out.index = n;
  out.parity = n % 2 == 1 ? Parity::even : Parity::odd;
  out.units = units;
  out.psi = [=](double x) {
    if (x <= 0.0 || x >= width) return 0.0;
    return amplitude * std::sin(k * x);
  };
  // d^j sin(kx) = k^j sin(kx + j pi/2); sin(j pi/2) cycles 0, 1, 0, -1.
  constexpr int kCycle[4] = {0, 1, 0, -1};
  const double end_sign = n % 2 == 0 ? 1.0 : -1.0;
  DerivativeJet at_zero{0.0, {}, {}};
  DerivativeJet at_width{width, {}, {}};
  double power = amplitude;
  for (int j = 0; j <= kDerivativeDepth; ++j) {
    at_zero.left.push_back(0.0);
    at_zero.right.push_back(power * kCycle[j % 4]);
    at_width.left.push_back(end_sign * power * kCycle[j % 4]);
    at_width.right.push_back(0.0);
    power *= k;
  }
  out.derivative_table = {std::move(at_zero), std::move(at_width)};
  out.support = {0.0, width, {0.0, width}, std::min(width, 1.0 / k)};
  out.momentum_scale = units.hbar * k;
  return out;
}

BoundState solve_finite_well(const PotentialSpec& spec, int n) {
  if (spec.get_if<FiniteWell>() == nullptr) throw InvalidSpec("solve_finite_well needs a FiniteWell");
  return solve_piecewise(spec, n);
}

BoundState solve_step_sum(const PotentialSpec& spec, int n) {
  if (spec.get_if<StepSum>() == nullptr) throw InvalidSpec("solve_step_sum needs a StepSum");
  return solve_piecewise(spec, n);
}

HybridSolution solve_hybrid_detailed(const PotentialSpec& spec) {
  const auto* h = spec.get_if<HybridDeltaStep>();
  if (h == nullptr) throw InvalidSpec("solve_hybrid needs a HybridDeltaStep");
  const auto p = make_piecewise(spec);
  const auto roots = piecewise_roots(p);
  if (roots.empty()) throw NoBoundState("HybridDeltaStep: no bound state for these parameters");
  HybridSolution out;
  out.state = piecewise_bound_state(p, roots.front(), 0);
  const Units& u = spec.units();
  const double e = roots.front();
  out.K = std::sqrt(u.kinetic_factor() * (-e));
  out.Q = std::sqrt(u.kinetic_factor() * (h->step_height - e));
  const double psi0 = out.state.psi(0.0);
  const double slope0 = out.state.derivative_table.front().right.at(1);
  out.A = psi0;
  out.C = 0.5 * (psi0 + slope0 / out.K);
  out.B = 0.5 * (psi0 - slope0 / out.K);
  const double a = h->step_location;
  out.D = out.state.psi(a) * std::exp(out.Q * a);
  return out;
}

BoundState solve_hybrid(const PotentialSpec& spec) { return solve_hybrid_detailed(spec).state; }

BoundState solve_bouncer(double force, int n, const Units& units) {
  if (!(force > 0.0)) throw InvalidSpec("force must be positive");
  if (n < 1) throw NoSuchState("bouncer states start at n = 1");
  const double rho = airy_length(force, units);
  const double zeta = airy_zero(n);
  const double norm = 1.0 / (std::sqrt(rho) * airy_ai_prime(-zeta));

  BoundState out;
  out.energy = airy_energy(force, units) * zeta;
  out.index = n;
  out.parity = Parity::none;
  out.units = units;
  out.psi = [=](double z) { return z <= 0.0 ? 0.0 : norm * airy_ai(z / rho - zeta); };
  DerivativeJet jet;
  jet.location = 0.0;
  jet.right = airy_jet(norm, rho, 1.0, zeta, 0.0, airy_ai_prime(-zeta));
  jet.left.assign(jet.right.size(), 0.0);
  out.derivative_table.push_back(std::move(jet));
  out.support = {0.0, rho * (zeta + kAiryTail), {0.0}, 0.8 * rho / std::max(std::sqrt(zeta), 4.0)};
  out.momentum_scale = units.hbar / rho * std::sqrt(zeta);
  return out;
}

BoundState solve_symmetric_linear(double force, int n, Parity parity, const Units& units) {
  if (!(force > 0.0)) throw InvalidSpec("force must be positive");
  if (n < 1) throw NoSuchState("symmetric linear states start at n = 1 within each parity");
  if (parity == Parity::none) throw InvalidSpec("symmetric linear states need even or odd parity");
  const double rho = airy_length(force, units);

  BoundState out;
  out.index = n;
  out.parity = parity;
  out.units = units;
  DerivativeJet jet;
  jet.location = 0.0;
  double shift = 0.0;
  if (parity == Parity::even) {
    const double eta = airy_prime_zero(n);
    const double norm = 1.0 / (std::sqrt(2.0 * rho * eta) * airy_ai(-eta));
    shift = eta;
    out.psi = [=](double z) { return norm * airy_ai(std::abs(z) / rho - eta); };
    jet.right = airy_jet(norm, rho, 1.0, eta, airy_ai(-eta), 0.0);
    jet.left = airy_jet(norm, rho, -1.0, eta, airy_ai(-eta), 0.0);
  } else {
    const double zeta = airy_zero(n);
    const double norm = 1.0 / (std::sqrt(2.0 * rho) * airy_ai_prime(-zeta));
    shift = zeta;
    out.psi = [=](double z) {
      const double v = norm * airy_ai(std::abs(z) / rho - zeta);
      return z < 0.0 ? -v : v;
    };
    jet.right = airy_jet(norm, rho, 1.0, zeta, 0.0, airy_ai_prime(-zeta));
    jet.left = airy_jet(-norm, rho, -1.0, zeta, 0.0, airy_ai_prime(-zeta));
  }
  out.energy = airy_energy(force, units) * shift;
  out.derivative_table.push_back(std::move(jet));
  const double extent = rho * (shift + kAiryTail);
  out.support = {-extent, extent, {0.0}, 0.8 * rho / std::max(std::sqrt(shift), 4.0)};
  out.momentum_scale = units.hbar / rho * std::sqrt(shift);
  return out;
}

BoundState solve_asymmetric_linear(const PotentialSpec& spec, int n) {
  const auto* a = spec.get_if<AsymmetricLinear>();
  if (a == nullptr) throw InvalidSpec("solve_asymmetric_linear needs an AsymmetricLinear");
  if (n < 1) throw NoSuchState("asymmetric linear states start at n = 1");
  const Units u = spec.units();
  const double rho_r = airy_length(a->force_right, u);
  const double rho_l = airy_length(a->force_left, u);
  const double e0_r = airy_energy(a->force_right, u);
  const double e0_l = airy_energy(a->force_left, u);

  // Continuity of psi'/psi at the kink.
  auto defect = [&](double e) {
    const AiryPair r = airy(-e / e0_r);
    const AiryPair l = airy(-e / e0_l);
    return r.ai_prime * l.ai / rho_r + r.ai * l.ai_prime / rho_l;
  };
  const double step = 0.02 * std::min(e0_r, e0_l);
  double e_prev = 0.0;
  double f_prev = defect(e_prev);
  int found = 0;
  double energy = 0.0;
  for (int i = 1; i < 2000000; ++i) {
    const double e = i * step;
    const double f = defect(e);
    if ((f < 0.0) != (f_prev < 0.0)) {
      if (++found == n) {
        double lo = e_prev, hi = e, f_lo = f_prev;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = defect(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = fm;
          } else {
            hi = mid;
          }
        }
        energy = 0.5 * (lo + hi);
        break;
      }
    }
    e_prev = e;
    f_prev = f;
  }
  if (found < n) throw NoConvergence("asymmetric linear: eigenvalue scan exhausted");

  const double shift_r = energy / e0_r;
  const double shift_l = energy / e0_l;
  const AiryPair r = airy(-shift_r);
  const AiryPair l = airy(-shift_l);
  // (psi, psi') at 0 from each side with unit amplitude; B aligns the left branch.
  const double rv = r.ai, rs = r.ai_prime / rho_r;
  const double lv = l.ai, ls = -l.ai_prime / rho_l;
  double amp_l = (rv * lv + rs * ls) / (lv * lv + ls * ls);
  double norm2 = rho_r * (r.ai_prime * r.ai_prime + shift_r * r.ai * r.ai) +
                 amp_l * amp_l * rho_l * (l.ai_prime * l.ai_prime + shift_l * l.ai * l.ai);
  const double amp_r = 1.0 / std::sqrt(norm2);
  amp_l *= amp_r;

  BoundState out;
  out.energy = energy;
  out.index = n;
  out.parity = Parity::none;
  out.units = u;
  out.psi = [=](double z) {
    return z >= 0.0 ? amp_r * airy_ai(z / rho_r - shift_r) : amp_l * airy_ai(-z / rho_l - shift_l);
  };
  DerivativeJet jet;
  jet.location = 0.0;
  jet.right = airy_jet(amp_r, rho_r, 1.0, shift_r, r.ai, r.ai_prime);
  jet.left = airy_jet(amp_l, rho_l, -1.0, shift_l, l.ai, l.ai_prime);
  jet.left[0] = jet.right[0];
  out.derivative_table.push_back(std::move(jet));
  const double kmax = std::max(std::sqrt(std::max(shift_r, 16.0)) / rho_r,
                               std::sqrt(std::max(shift_l, 16.0)) / rho_l);
  out.support = {-rho_l * (shift_l + kAiryTail), rho_r * (shift_r + kAiryTail), {0.0}, 0.8 / kmax};
  out.momentum_scale = std::sqrt(2.0 * u.mass * energy);
  return out;
}

BoundState solve(const PotentialSpec& spec, int n, Parity parity) {
  const Units& u = spec.units();
  if (const auto* d = spec.get_if<DeltaSum>()) {
    if (d->deltas.size() == 1 && n == 0) return solve_delta(spec);
    return solve_delta_sum(spec, n);
  }
  if (const auto* w = spec.get_if<InfiniteWell>()) return solve_infinite_well(w->width, n, u);
  if (spec.get_if<FiniteWell>() != nullptr) return solve_finite_well(spec, n);
  if (spec.get_if<StepSum>() != nullptr) return solve_step_sum(spec, n);
  if (spec.get_if<HybridDeltaStep>() != nullptr) {
    if (n != 0) throw NoSuchState("HybridDeltaStep has a single bound state (n = 0)");
    return solve_hybrid(spec);
  }
  if (const auto* b = spec.get_if<Bouncer>()) return solve_bouncer(b->force, n, u);
  if (const auto* s = spec.get_if<SymmetricLinear>()) return solve_symmetric_linear(s->force, n, parity, u);
  return solve_asymmetric_linear(spec, n);
}

int first_state_index(const PotentialSpec& spec) {
  if (spec.get_if<DeltaSum>() || spec.get_if<FiniteWell>() || spec.get_if<StepSum>() ||
      spec.get_if<HybridDeltaStep>()) {
    return 0;
  }
  return 1;
}

double position_integral(const BoundState& state, const std::function<double(double)>& f) {
  const auto& rule = gauss_legendre_16();
  std::vector<double> edges{state.support.support_min};
  for (double b : state.support.breakpoints) {
    if (b > edges.front() && b < state.support.support_max) edges.push_back(b);
  }
  edges.push_back(state.support.support_max);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double length = edges[s + 1] - edges[s];
    const long panels = std::max(1L, static_cast<long>(std::ceil(length / state.support.smooth_length)));
    const double h = length / panels;
    for (long j = 0; j < panels; ++j) {
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        total += rule.weights[i] * h * f(edges[s] + (j + rule.nodes[i]) * h);
      }
    }
  }
  return total;
}

double normalization_integral(const BoundState& state) {
  return position_integral(state, [&state](double x) {
    const double v = state.psi(x);
    return v * v;
  });
}

std::vector<double> piecewise_energies(const PotentialSpec& spec) {
  return piecewise_roots(make_piecewise(spec));
}

}  // namespace momtail
