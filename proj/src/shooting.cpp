#include <algorithm>
#include <cmath>
#include <string>

#include "momtail/eigensolve.hpp"
#include "momtail/error.hpp"

namespace momtail {

namespace {

// Integrate until the WKB action into the forbidden region reaches this.
constexpr double kForbiddenAction = 40.0;

struct Feature {
  double location;
  double delta_jump = 0.0;  // record jump of an order -1 record (psi' jump is kf * jump * psi)
  bool wall = false;
};

std::vector<Feature> features_of(const PotentialSpec& spec) {
  std::vector<Feature> out;
  for (const auto& r : discontinuities(spec)) {
    if (!out.empty() && out.back().location == r.location) {
      if (r.order == -1) {
        out.back().wall = out.back().wall || r.wall;
        if (!r.wall) out.back().delta_jump += r.jump;
      }
      continue;
    }
    Feature f{r.location};
    if (r.order == -1) {
      f.wall = r.wall;
      if (!r.wall) f.delta_jump = r.jump;
    }
    out.push_back(f);
  }
  return out;
}

struct State {
  double psi;
  double slope;
};

class Shooter {
 public:
  Shooter(const PotentialSpec& spec, double reference_energy) : spec_(spec), kf_(spec.units().kinetic_factor()) {
    features_ = features_of(spec);
    const double e = reference_energy;
    double v_scale = std::abs(e);
    for (const auto& f : features_) {
      if (auto v = potential(f.location + 1e-9)) v_scale = std::max(v_scale, std::abs(*v - e));
      if (auto v = potential(f.location - 1e-9)) v_scale = std::max(v_scale, std::abs(*v - e));
    }
    base_length_ = 1.0 / std::sqrt(kf_ * std::max(v_scale, 1e-300));

    const Feature& first = features_.front();
    const Feature& last = features_.back();
    // A wall record closes whichever side has no potential value.
    left_wall_ = first.wall && !potential(first.location - 1e-9);
    right_wall_ = last.wall && !potential(last.location + 1e-9);
    left_end_ = left_wall_ ? first.location : walk_outward(first.location, -1.0, e);
    right_end_ = right_wall_ ? last.location : walk_outward(last.location, +1.0, e);

    if (features_.size() >= 2) {
      const std::size_t mid = features_.size() / 2;
      match_ = 0.5 * (features_[mid - 1].location + features_[mid].location);
    } else if (left_wall_) {
      match_ = 0.5 * (first.location + turning_) ;
    } else {
      match_ = first.location;
    }

    double v_max = 0.0;
    for (double x : {left_end_, right_end_, match_}) {
      if (auto v = potential(x)) v_max = std::max(v_max, std::abs(*v - e));
    }
    for (const auto& f : features_) {
      for (double s : {-1e-9, 1e-9}) {
        if (auto v = potential(f.location + s)) v_max = std::max(v_max, std::abs(*v - e));
      }
    }
    const double k_max = std::sqrt(kf_ * std::max(v_max, std::abs(e) + 1e-300));
    step_ = std::min(0.005 / k_max, (right_end_ - left_end_) / 2000.0);
  }

  double match_point() const { return match_; }

  // Left solution at match_- and right solution converted to match_-.
  std::pair<State, State> shoot(double energy, std::vector<double>* xs = nullptr,
                                std::vector<double>* left_psi = nullptr,
                                std::vector<double>* right_xs = nullptr,
                                std::vector<double>* right_psi = nullptr) const {
    State left{0.0, 1.0};
    std::vector<double> stops{left_end_};
    for (const auto& f : features_) {
      if (f.location > left_end_ && f.location < match_) stops.push_back(f.location);
    }
    stops.push_back(match_);
    for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
      if (i > 0) left.slope += kick(stops[i]) * left.psi;
      left = integrate(left, stops[i], stops[i + 1], energy, xs, left_psi);
    }

    State right{0.0, -1.0};
    std::vector<double> rstops{right_end_};
    for (auto it = features_.rbegin(); it != features_.rend(); ++it) {
      if (it->location < right_end_ && it->location > match_) rstops.push_back(it->location);
    }
    rstops.push_back(match_);
    for (std::size_t i = 0; i + 1 < rstops.size(); ++i) {
      if (i > 0) right.slope -= kick(rstops[i]) * right.psi;
      right = integrate(right, rstops[i], rstops[i + 1], energy, right_xs, right_psi);
    }
    right.slope -= kick(match_) * right.psi;
    return {left, right};
  }

  double defect(double energy) const {
    const auto [l, r] = shoot(energy);
    const double scale = base_length_;
    const double nl = std::hypot(l.psi, l.slope * scale);
    const double nr = std::hypot(r.psi, r.slope * scale);
    return (l.psi * r.slope - l.slope * r.psi) * scale / (nl * nr);
  }

  double base_length() const { return base_length_; }

 private:
  std::optional<double> potential(double x) const { return evaluate(spec_, x); }

  double kick(double x) const {
    for (const auto& f : features_) {
      if (f.location == x) return kf_ * f.delta_jump;
    }
    return 0.0;
  }

  // Walks away from the outermost feature until the forbidden-region action is large.
  double walk_outward(double start, double direction, double energy) {
    double x = start;
    double action = 0.0;
    const double dx = 0.05 * base_length_;
    for (int i = 0; i < 10000000 && action < kForbiddenAction; ++i) {
      x += direction * dx;
      const auto v = potential(x);
      if (!v) break;
      const double d = kf_ * (*v - energy);
      if (d > 0.0) {
        action += std::sqrt(d) * dx;
      } else if (direction > 0.0) {
        turning_ = x;
      }
    }
    if (direction > 0.0 && turning_ < start) turning_ = x;
    return x;
  }

  // RK4 for psi'' = kf (V - E) psi on [a, b] (either direction); V is read strictly inside.
  State integrate(State s, double a, double b, double energy, std::vector<double>* xs,
                  std::vector<double>* ps) const {
    const double length = b - a;
    if (length == 0.0) return s;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(length) / step_)));
    const double h = length / steps;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double eps = 1e-12 * (hi - lo);
    auto w = [&](double x) {
      const double xc = std::clamp(x, lo + eps, hi - eps);
      return kf_ * (potential(xc).value_or(0.0) - energy);
    };
    if (xs != nullptr) {
      xs->push_back(a);
      ps->push_back(s.psi);
    }
    double x = a;
    for (int i = 0; i < steps; ++i) {
      const double w0 = w(x), w1 = w(x + 0.5 * h), w2 = w(x + h);
      const double k1p = s.slope, k1s = w0 * s.psi;
      const double k2p = s.slope + 0.5 * h * k1s, k2s = w1 * (s.psi + 0.5 * h * k1p);
      const double k3p = s.slope + 0.5 * h * k2s, k3s = w1 * (s.psi + 0.5 * h * k2p);
      const double k4p = s.slope + h * k3s, k4s = w2 * (s.psi + h * k3p);
      s.psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      s.slope += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
      x = a + (i + 1) * h;
      // Keep the recessive start from overflowing deep in the forbidden region.
      const double n = std::abs(s.psi) + std::abs(s.slope) * base_length_;
      if (n > 1e200 && xs == nullptr) {
        s.psi /= n;
        s.slope /= n;
      }
      if (xs != nullptr) {
        xs->push_back(x);
        ps->push_back(s.psi);
      }
    }
    return s;
  }

  const PotentialSpec& spec_;
  double kf_;
  std::vector<Feature> features_;
  double base_length_ = 1.0;
  double turning_ = -INFINITY;
  bool left_wall_ = false;
  bool right_wall_ = false;
  double left_end_ = 0.0;
  double right_end_ = 0.0;
  double match_ = 0.0;
  double step_ = 1e-3;
};

}  // namespace

ShootingSolution shooting_oracle(const PotentialSpec& spec, EnergyBracket bracket, int n) {
  if (!(bracket.lo < bracket.hi)) throw InvalidSpec("energy bracket must satisfy lo < hi");
  const Shooter shooter(spec, bracket.hi);
  double lo = bracket.lo, hi = bracket.hi;
  double f_lo = shooter.defect(lo);
  const double f_hi = shooter.defect(hi);
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw NoConvergence("shooting: matching defect does not change sign in the bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = shooter.defect(mid);
    if (f == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  ShootingSolution out;
  out.energy = 0.5 * (lo + hi);

  std::vector<double> lx, lp, rx, rp;
  const auto [l, r] = shooter.shoot(out.energy, &lx, &lp, &rx, &rp);
  const double s = shooter.base_length();
  const double ratio = (l.psi * r.psi + l.slope * r.slope * s * s) / (r.psi * r.psi + r.slope * r.slope * s * s);
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (!out.x.empty() && lx[i] == out.x.back()) continue;
    out.x.push_back(lx[i]);
    out.psi.push_back(lp[i]);
  }
  for (std::size_t i = rx.size(); i-- > 0;) {
    if (!out.x.empty() && rx[i] <= out.x.back()) continue;
    out.x.push_back(rx[i]);
    out.psi.push_back(ratio * rp[i]);
  }
  double norm = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i + 1 < out.x.size(); ++i) {
    norm += 0.5 * (out.x[i + 1] - out.x[i]) * (out.psi[i] * out.psi[i] + out.psi[i + 1] * out.psi[i + 1]);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& v : out.psi) {
    v *= scale;
    peak = std::max(peak, std::abs(v));
  }
  // Sign convention: first significant lobe positive.
  double previous = 0.0;
  for (double v : out.psi) {
    if (std::abs(v) < 1e-8 * peak) continue;
    if (previous == 0.0 && v < 0.0) {
      for (auto& w : out.psi) w = -w;
      break;
    }
    if (previous == 0.0) break;
  }
  for (double v : out.psi) {
    if (std::abs(v) < 1e-8 * peak) continue;
    if (previous != 0.0 && (v < 0.0) != (previous < 0.0)) ++out.nodes;
    previous = v;
  }
  if (out.nodes != n) {
    throw NoConvergence("shooting: found " + std::to_string(out.nodes) + " nodes, expected " +
                        std::to_string(n));
  }
  return out;
}

}  // namespace momtail
