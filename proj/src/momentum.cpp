#include "momtail/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "momtail/error.hpp"
#include "momtail/gauss_legendre.hpp"
#include "momtail/parallel.hpp"
#include "momtail/specfun.hpp"

namespace momtail {

namespace {

// Compensated summation keeps panel sums at the rounding floor.
struct Neumaier {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Below this phase span a segment is integrated with directly computed phases.
constexpr double kDirectPhaseSpan = 64.0;

struct Accumulator {
  Neumaier re;
  Neumaier im;
  long panels = 0;
};

void check_budget(const Accumulator& acc, const QuadratureOptions& options, double p) {
  if (acc.panels > options.panel_budget) {
    throw QuadratureBudgetExceeded("quadrature: panel budget exceeded at p = " + std::to_string(p));
  }
}

// int_{s0}^{s1} psi(x) e^{-iq(x - s0)} dx.
std::complex<double> segment_integral(const BoundState& state, double s0, double s1, double q,
                                      const QuadratureOptions& options, double p) {
  const auto& rule = gauss_legendre_16();
  const int order = static_cast<int>(rule.nodes.size());
  const double length = s1 - s0;
  const double smooth = state.support.smooth_length;
  Accumulator acc;

  auto direct = [&](double u0, double u1, double sign) {
    const double span = u1 - u0;
    const double width = q > 0.0 ? std::min(smooth, std::numbers::pi / q) : smooth;
    const long panels = std::max(1L, static_cast<long>(std::ceil(span / width)));
    acc.panels += panels;
    check_budget(acc, options, p);
    const double h = span / panels;
    for (long j = 0; j < panels; ++j) {
      for (int i = 0; i < order; ++i) {
        const double v = (j + rule.nodes[i]) * h;  // offset from u0
        const double f = state.psi(s0 + u0 + v) * rule.weights[i] * h * sign;
        acc.re.add(f * std::cos(q * v));
        acc.im.add(-f * std::sin(q * v));
      }
    }
  };

  if (q * length <= kDirectPhaseSpan) {
    direct(0.0, length, 1.0);
    // direct() measured phases from u0 = 0, so no rotation is needed.
    return {acc.re.value(), acc.im.value()};
  }

  // Half-period panels: on panel r, e^{-iqu} = (-1)^r e^{-iqv} with qv in [0, pi].
  const double half = std::numbers::pi / q;
  const long full = static_cast<long>(std::floor(length / half));
  const int sub = std::max(1, static_cast<int>(std::ceil(half / smooth)));
  acc.panels += full * sub;
  check_budget(acc, options, p);
  std::vector<double> cs(static_cast<std::size_t>(sub) * order);
  std::vector<double> sn(cs.size());
  std::vector<double> offset(cs.size());
  std::vector<double> weight(cs.size());
  for (int j = 0; j < sub; ++j) {
    for (int i = 0; i < order; ++i) {
      const double t = (j + rule.nodes[i]) / sub;
      const std::size_t idx = static_cast<std::size_t>(j) * order + i;
      cs[idx] = std::cos(std::numbers::pi * t);
      sn[idx] = std::sin(std::numbers::pi * t);
      offset[idx] = t;
      weight[idx] = rule.weights[i] * half / sub;
    }
  }
  for (long r = 0; r < full; ++r) {
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    Neumaier re, im;
    for (std::size_t idx = 0; idx < cs.size(); ++idx) {
      const double f = state.psi(s0 + (r + offset[idx]) * half) * weight[idx];
      re.add(f * cs[idx]);
      im.add(-f * sn[idx]);
    }
    acc.re.add(sign * re.value());
    acc.im.add(sign * im.value());
  }
  const double done = full * half;
  if (length - done > 0.0) {
    const double sign = (full % 2 == 0) ? 1.0 : -1.0;
    direct(done, length, sign);
  }
  return {acc.re.value(), acc.im.value()};
}

std::vector<double> segment_edges(const Support& support) {
  std::vector<double> edges{support.support_min};
  for (double b : support.breakpoints) {
    if (b > support.support_min && b < support.support_max) edges.push_back(b);
  }
  edges.push_back(support.support_max);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// (e^{iu} - 1) / (iu), smooth through u = 0.
std::complex<double> phase_ramp(double u) {
  if (std::abs(u) < 0.5) {
    std::complex<double> term(1.0, 0.0);
    std::complex<double> sum = term;
    const std::complex<double> iu(0.0, u);
    for (int j = 1; j < 30; ++j) {
      term *= iu / static_cast<double>(j + 1);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  const double half_sin = std::sin(0.5 * u);
  return {std::sin(u) / u, 2.0 * half_sin * half_sin / u};
}

// Width of the region where |psi| exceeds 1e-8 of its peak.
double core_width(const BoundState& state) {
  constexpr int kScan = 4000;
  const double a = state.support.support_min;
  const double b = state.support.support_max;
  std::vector<double> values(kScan + 1);
  double peak = 0.0;
  for (int i = 0; i <= kScan; ++i) {
    values[i] = std::abs(state.psi(a + (b - a) * i / kScan));
    peak = std::max(peak, values[i]);
  }
  int first = 0, last = kScan;
  while (first < kScan && values[first] < 1e-8 * peak) ++first;
  while (last > 0 && values[last] < 1e-8 * peak) --last;
  const double step = (b - a) / kScan;
  return std::max(step, (last - first + 2) * step);
}

struct TailSeries {
  int leading = 0;
  std::vector<double> locations;
  // Per location, c_n = jump of psi^(n-1) for n = 1..depth+1.
  std::vector<std::vector<double>> jumps;
};

bool significant(const DerivativeJet& jet, int j) {
  const double scale = std::max(std::abs(jet.left.at(j)), std::abs(jet.right.at(j)));
  const double d = std::abs(jet.jump(j));
  return d > 1e-10 * scale && d > 1e-300;
}

TailSeries tail_series(const BoundState& state) {
  TailSeries t;
  int leading = 1 << 20;
  for (const auto& jet : state.derivative_table) {
    std::vector<double> c;
    for (int j = 0; j <= jet.depth(); ++j) {
      const bool keep = significant(jet, j);
      c.push_back(keep ? jet.jump(j) : 0.0);
      if (keep) leading = std::min(leading, j + 1);
    }
    t.jumps.push_back(std::move(c));
    t.locations.push_back(jet.location);
  }
  t.leading = leading;
  return t;
}

// int_P^inf p^-sigma e^{-i omega p} dp for sigma > 1, omega != 0. Integration by
// parts gives e^{-i omega P} P^-sigma / (i omega) sum_j (-1)^j (sigma)_j / (i omega P)^j,
// used once |omega| P >= 40; below that the stretch is integrated numerically.
std::complex<double> oscillatory_power_tail(double sigma, double omega, double p_from) {
  constexpr double kAsymptotic = 40.0;
  const double w = std::abs(omega);
  std::complex<double> head = 0.0;
  double start = p_from;
  if (w * p_from < kAsymptotic) {
    const double stop = kAsymptotic / w;
    const auto& rule = gauss_legendre_16();
    for (double a = p_from; a < stop;) {
      const double b = std::min({a + std::numbers::pi / w, 1.25 * a, stop});
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double p = a + (b - a) * rule.nodes[i];
        head += rule.weights[i] * (b - a) * std::pow(p, -sigma) * std::polar(1.0, -omega * p);
      }
      a = b;
    }
    start = stop;
  }
  const std::complex<double> iwp(0.0, omega * start);
  std::complex<double> term = 1.0, series = 0.0;
  double previous = INFINITY;
  for (int j = 0; j < 200; ++j) {
    const double size = std::abs(term);
    if (size > previous) break;  // stop at the smallest term
    series += term;
    if (size < 1e-17 * std::abs(series)) break;
    previous = size;
    term *= -(sigma + j) / iwp;
  }
  const std::complex<double> lead =
      std::polar(std::pow(start, -sigma), -omega * start) / std::complex<double>(0.0, omega);
  return head + lead * series;
}

// 2 * int_{P}^{inf} p^k |S(p)|^2 dp with S the tabulated asymptotic series,
// interference between locations included.
double analytic_tail(const TailSeries& t, int k, double p_cut, double hbar) {
  Neumaier total;
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t l = 0; l < t.jumps.size(); ++l) {
    for (std::size_t m = 0; m < t.jumps.size(); ++m) {
      const double omega = (t.locations[l] - t.locations[m]) / hbar;
      const auto& cl = t.jumps[l];
      const auto& cm = t.jumps[m];
      for (int a = 1; a <= static_cast<int>(cl.size()); ++a) {
        for (int b = 1; b <= static_cast<int>(cm.size()); ++b) {
          const double cab = cl[a - 1] * cm[b - 1];
          if (cab == 0.0) continue;
          const int s = a + b;
          if (s <= k + 1) throw DivergentMoment("moment diverges");
          const std::complex<double> phase = std::pow(i, b - a);  // (-i)^a i^b
          const double scale = cab * std::pow(hbar, s);
          if (omega == 0.0) {
            total.add(phase.real() * scale * std::pow(p_cut, k - s + 1) / (s - k - 1));
          } else {
            total.add((phase * scale * oscillatory_power_tail(s - k, omega, p_cut)).real());
          }
        }
      }
    }
  }
  return 2.0 * total.value() / (2.0 * std::numbers::pi * hbar);
}

}  // namespace

std::vector<double> linear_grid(double min, double max, int count) {
  if (count < 2 || !(min < max)) throw InvalidSpec("linear grid needs min < max and count >= 2");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = min + (max - min) * i / (count - 1);
  g.back() = max;
  return g;
}

std::vector<double> log_grid(double min, double max, int per_decade) {
  if (!(min > 0.0) || !(min < max) || per_decade < 1) {
    throw InvalidSpec("log grid needs 0 < min < max and per_decade >= 1");
  }
  const double decades = std::log10(max / min);
  const int intervals = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
  std::vector<double> g(intervals + 1);
  for (int i = 0; i <= intervals; ++i) g[i] = min * std::pow(max / min, static_cast<double>(i) / intervals);
  g.front() = min;
  g.back() = max;
  return g;
}

std::complex<double> phi_delta_at(const PotentialSpec& spec, const BoundState& state, double p) {
  const auto* d = spec.get_if<DeltaSum>();
  if (d == nullptr) throw InvalidSpec("phi_delta_at needs a DeltaSum");
  const Units& u = spec.units();
  const double q = p / u.hbar;
  const double kappa2 = u.kinetic_factor() * std::abs(state.energy);
  std::complex<double> sum = 0.0;
  for (const auto& delta : d->deltas) {
    sum += delta.strength * state.psi(delta.location) * std::polar(1.0, -q * delta.location);
  }
  return sum * (u.kinetic_factor() / ((kappa2 + q * q) * std::sqrt(2.0 * std::numbers::pi * u.hbar)));
}

MomentumSamples phi_closed_delta(const PotentialSpec& spec, const BoundState& state,
                                 const std::vector<double>& grid) {
  MomentumSamples s;
  s.grid = grid;
  s.provenance = Provenance::closed_form;
  for (double p : grid) {
    const auto v = phi_delta_at(spec, state, p);
    s.phi_re.push_back(v.real());
    s.phi_im.push_back(v.imag());
  }
  return s;
}

std::complex<double> phi_well_at(double width, int n, double p, const Units& units) {
  if (!(width > 0.0) || n < 1) throw InvalidSpec("infinite well needs width > 0 and n >= 1");
  const double k = n * std::numbers::pi / width;
  const double q = p / units.hbar;
  // sin(kx) = (e^{ikx} - e^{-ikx}) / 2i integrated over (0, L).
  const std::complex<double> integral =
      width / std::complex<double>(0.0, 2.0) *
      (phase_ramp((k - q) * width) - phase_ramp((-k - q) * width));
  return std::sqrt(2.0 / width) * integral / std::sqrt(2.0 * std::numbers::pi * units.hbar);
}

MomentumSamples phi_closed_well(double width, int n, const std::vector<double>& grid,
                                const Units& units) {
  MomentumSamples s;
  s.grid = grid;
  s.provenance = Provenance::closed_form;
  for (double p : grid) {
    const auto v = phi_well_at(width, n, p, units);
    s.phi_re.push_back(v.real());
    s.phi_im.push_back(v.imag());
  }
  return s;
}

std::complex<double> phi_quadrature_at(const BoundState& state, double p,
                                       const QuadratureOptions& options) {
  if (!state.psi) throw InvalidSpec("state has no wavefunction");
  const double q = std::abs(p) / state.units.hbar;
  const auto edges = segment_edges(state.support);
  std::complex<double> total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto part = segment_integral(state, edges[i], edges[i + 1], q, options, p);
    total += part * std::polar(1.0, -q * edges[i]);
  }
  total /= std::sqrt(2.0 * std::numbers::pi * state.units.hbar);
  return p < 0.0 ? std::conj(total) : total;
}

MomentumSamples phi_quadrature(const BoundState& state, const std::vector<double>& grid,
                               const QuadratureOptions& options) {
  std::map<double, std::size_t> unique;
  for (double p : grid) unique.emplace(std::abs(p), 0);
  std::vector<double> keys;
  for (auto& [key, slot] : unique) {
    slot = keys.size();
    keys.push_back(key);
  }
  std::vector<std::complex<double>> values(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) { values[i] = phi_quadrature_at(state, keys[i], options); });
  MomentumSamples s;
  s.grid = grid;
  s.provenance = Provenance::quadrature;
  for (double p : grid) {
    auto v = values[unique.at(std::abs(p))];
    if (p < 0.0) v = std::conj(v);
    s.phi_re.push_back(v.real());
    s.phi_im.push_back(v.imag());
  }
  return s;
}

PhiFunction phi_function(const PotentialSpec& spec, const BoundState& state) {
  if (spec.get_if<DeltaSum>() != nullptr) {
    return [spec, state](double p) { return phi_delta_at(spec, state, p); };
  }
  if (const auto* w = spec.get_if<InfiniteWell>()) {
    const double width = w->width;
    const int n = state.index;
    const Units u = spec.units();
    return [=](double p) { return phi_well_at(width, n, p, u); };
  }
  return [state](double p) { return phi_quadrature_at(state, p); };
}

MomentumSamples transform(const PotentialSpec& spec, const BoundState& state,
                          const std::vector<double>& grid) {
  if (spec.get_if<DeltaSum>() != nullptr) return phi_closed_delta(spec, state, grid);
  if (const auto* w = spec.get_if<InfiniteWell>()) {
    return phi_closed_well(w->width, state.index, grid, spec.units());
  }
  return phi_quadrature(state, grid);
}

int leading_tail_order(const BoundState& state) { return tail_series(state).leading; }

double moment(const BoundState& state, int k, const PhiFunction& phi, double p_cut) {
  if (k < 0) throw InvalidSpec("moment order must be >= 0");
  if (k % 2 != 0) return 0.0;
  const TailSeries tail = tail_series(state);
  if (k >= 2 * tail.leading - 1) {
    throw DivergentMoment("<p^" + std::to_string(k) + "> diverges: |phi|^2 ~ p^-" +
                          std::to_string(2 * tail.leading));
  }
  const auto& rule = gauss_legendre_16();
  const double width = 2.0 * std::numbers::pi * state.units.hbar / core_width(state);
  const long panels = std::max(1L, static_cast<long>(std::ceil(p_cut / width)));
  const double h = p_cut / panels;
  std::vector<double> partial(panels);
  parallel_for(static_cast<std::size_t>(panels), [&](std::size_t j) {
    Neumaier s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double p = (j + rule.nodes[i]) * h;
      s.add(rule.weights[i] * h * std::pow(p, k) * std::norm(phi(p)));
    }
    partial[j] = s.value();
  });
  Neumaier body;
  for (double v : partial) body.add(v);
  return 2.0 * body.value() + analytic_tail(tail, k, p_cut, state.units.hbar);
}

double moment(const PotentialSpec& spec, const BoundState& state, int k) {
  if (spec.get_if<DeltaSum>() != nullptr || spec.get_if<InfiniteWell>() != nullptr) {
    return moment(state, k, phi_function(spec, state), 2000.0 * state.momentum_scale);
  }
  return moment_quadrature(state, k);
}

double moment_quadrature(const BoundState& state, int k) {
  return moment(state, k, [&state](double p) { return phi_quadrature_at(state, p); },
                20.0 * state.momentum_scale);
}

double moment(const MomentumSamples& samples, int k) {
  if (k < 0) throw InvalidSpec("moment order must be >= 0");
  if (samples.size() < 2) return 0.0;
  Neumaier s;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double p0 = samples.grid[i], p1 = samples.grid[i + 1];
    s.add(0.5 * (p1 - p0) * (std::pow(p0, k) * samples.abs2(i) + std::pow(p1, k) * samples.abs2(i + 1)));
  }
  const bool one_sided = samples.grid.front() >= 0.0;
  if (one_sided) return k % 2 == 0 ? 2.0 * s.value() : 0.0;
  return s.value();
}

double parseval(const MomentumSamples& samples) { return moment(samples, 0); }

std::vector<double> parseval_grid(const BoundState& state, double tail_mass) {
  const TailSeries tail = tail_series(state);
  const int m = tail.leading;
  double c2 = 0.0;
  for (const auto& c : tail.jumps) {
    if (static_cast<int>(c.size()) >= m) c2 += c[m - 1] * c[m - 1];
  }
  const double hbar = state.units.hbar;
  c2 *= std::pow(hbar, 2 * m) / (2.0 * std::numbers::pi * hbar);
  double p_max = 4.0 * state.momentum_scale;
  if (c2 > 0.0) {
    p_max = std::max(p_max, std::pow(2.0 * c2 / ((2 * m - 1) * tail_mass), 1.0 / (2 * m - 1)));
  }
  const double h = std::min(0.05 * state.momentum_scale, 0.5 * std::numbers::pi * hbar / core_width(state));
  const long half = static_cast<long>(std::ceil(p_max / h));
  std::vector<double> grid;
  grid.reserve(2 * half + 1);
  for (long i = -half; i <= half; ++i) grid.push_back(i * h);
  return grid;
}

double classical_momentum_density(const BoundState& state, double p) {
  const double q = std::sqrt(2.0 * state.units.mass * state.energy);
  if (!(q > 0.0)) throw InvalidSpec("classical density needs a positive energy");
  return std::abs(p) <= q ? 0.5 / q : 0.0;
}

double classical_momentum_density(const PotentialSpec& spec, int n, double p, Parity parity) {
  const Units& u = spec.units();
  double shift = 0.0;
  double force = 0.0;
  if (const auto* b = spec.get_if<Bouncer>()) {
    force = b->force;
    shift = airy_zero(n);
  } else if (const auto* s = spec.get_if<SymmetricLinear>()) {
    force = s->force;
    shift = parity == Parity::odd ? airy_zero(n) : airy_prime_zero(n);
  } else {
    throw InvalidSpec("classical density is defined for Bouncer and SymmetricLinear");
  }
  const double q = u.hbar / airy_length(force, u) * std::sqrt(shift);
  return std::abs(p) <= q ? 0.5 / q : 0.0;
}

}  // namespace momtail
