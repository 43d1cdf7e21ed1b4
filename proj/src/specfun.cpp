#include "momtail/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "momtail/error.hpp"

namespace momtail {

namespace {

// Ai(0) = 3^{-2/3} / Gamma(2/3),  Ai'(0) = -3^{-1/3} / Gamma(1/3).
constexpr double kAiZero = 0.355028053887817239260063186004;
constexpr double kAiPrimeZero = -0.258819403792806798405183560189;

constexpr double kAnchorMin = -10.0;
constexpr double kAnchorMax = 16.0;
constexpr double kAnchorSpacing = 0.5;
constexpr int kAnchorCount =
    static_cast<int>((kAnchorMax - kAnchorMin) / kAnchorSpacing) + 1;

// Scaled modified Bessel function e^z K_nu(z) from the trapezoidal rule on
//   K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt,
// which converges geometrically in the step size for this entire integrand.
double scaled_bessel_k(double nu, double z) {
  const double h = std::min(0.2, 0.45 / std::sqrt(z));
  double sum = 0.5;
  for (int j = 1; j < 100000; ++j) {
    const double t = j * h;
    const double s = std::sinh(0.5 * t);
    const double term = std::exp(-2.0 * z * s * s) * std::cosh(nu * t);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum * h;
}

struct AnchorTable {
  std::array<AiryPair, kAnchorCount> values{};

  AnchorTable() {
    const int origin = static_cast<int>(-kAnchorMin / kAnchorSpacing);
    const AiryPair at_origin{kAiZero, kAiPrimeZero};
    for (int j = 0; j < kAnchorCount; ++j) {
      const double x = kAnchorMin + j * kAnchorSpacing;
      if (x >= -2.0 && x <= 2.0) values[j] = detail::airy_taylor_step(0.0, at_origin, x);
    }
    // Both solutions oscillate for x < 0, so stepping down is stable.
    for (int j = origin - 5; j >= 0; --j) {
      const double x_prev = kAnchorMin + (j + 1) * kAnchorSpacing;
      values[j] = detail::airy_taylor_step(x_prev, values[j + 1], -kAnchorSpacing);
    }
    // Ai is recessive for x > 0; anchors come from the integral representation.
    for (int j = origin + 5; j < kAnchorCount; ++j) {
      values[j] = detail::airy_bessel_k(kAnchorMin + j * kAnchorSpacing);
    }
  }
};

const AnchorTable& anchors() {
  static const AnchorTable table;
  return table;
}

}  // namespace

namespace detail {

AiryPair airy_taylor_step(double x0, AiryPair at_x0, double h) {
  if (h == 0.0) return at_x0;
  // Scaled coefficients b_k = a_k h^k with a_{k+2} = (x0 a_k + a_{k-1}) / ((k+1)(k+2)).
  const double h2 = h * h;
  const double h3 = h2 * h;
  double b_km1 = 0.0;
  double b_k = at_x0.ai;
  double b_kp1 = at_x0.ai_prime * h;
  double value = b_k + b_kp1;
  double slope = b_kp1;  // sum of k b_k, divided by h at the end
  double scale = std::abs(b_k) + std::abs(b_kp1);
  int quiet = 0;
  for (int k = 0; k < 400; ++k) {
    const double b_kp2 = (x0 * h2 * b_k + h3 * b_km1) / ((k + 1.0) * (k + 2.0));
    value += b_kp2;
    slope += (k + 2.0) * b_kp2;
    scale = std::max(scale, std::abs(b_kp2));
    b_km1 = b_k;
    b_k = b_kp1;
    b_kp1 = b_kp2;
    if (std::abs(b_kp2) * (k + 2.0) <= 1e-18 * scale) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return {value, slope / h};
}

AiryPair airy_bessel_k(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  if (zeta > 740.0) return {0.0, -0.0};
  const double decay = std::exp(-zeta);
  const double k13 = scaled_bessel_k(1.0 / 3.0, zeta);
  const double k23 = scaled_bessel_k(2.0 / 3.0, zeta);
  constexpr double inv_pi = std::numbers::inv_pi;
  constexpr double inv_sqrt3 = std::numbers::inv_sqrt3;
  return {inv_pi * std::sqrt(x) * inv_sqrt3 * k13 * decay,
          -inv_pi * x * inv_sqrt3 * k23 * decay};
}

AiryPair airy_oscillatory(double x) {
  const double z = -x;
  const double xi = 2.0 / 3.0 * z * std::sqrt(z);
  const double inv_xi = 1.0 / xi;
  // u_k and v_k of the standard amplitude/phase expansions.
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0;
  double u = 1.0;
  double pow_inv = 1.0;
  double last = INFINITY;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0));
    const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
    const double term_u = u * pow_inv;
    const double term_v = v * pow_inv;
    // Stop at the smallest term of the divergent series.
    if (std::abs(term_u) > last) break;
    last = std::abs(term_u);
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term_u;
      r += sign * term_v;
    } else {
      q += sign * term_u;
      s += sign * term_v;
    }
    if (last < 1e-17) break;
    pow_inv *= inv_xi;
  }
  const double c = std::cos(xi);
  const double sn = std::sin(xi);
  const double cos_phase = (c + sn) * std::numbers::sqrt2 * 0.5;  // cos(xi - pi/4)
  const double sin_phase = (sn - c) * std::numbers::sqrt2 * 0.5;  // sin(xi - pi/4)
  const double quarter = std::sqrt(std::sqrt(z));
  const double inv_sqrt_pi = std::numbers::inv_sqrtpi;
  return {inv_sqrt_pi / quarter * (cos_phase * p + sin_phase * q),
          inv_sqrt_pi * quarter * (sin_phase * r - cos_phase * s)};
}

}  // namespace detail

AiryPair airy(double x) {
  if (x < kAnchorMin) return detail::airy_oscillatory(x);
  if (x > kAnchorMax) return detail::airy_bessel_k(x);
  const auto& table = anchors();
  const int j = static_cast<int>(std::lround((x - kAnchorMin) / kAnchorSpacing));
  const double x0 = kAnchorMin + j * kAnchorSpacing;
  return detail::airy_taylor_step(x0, table.values[j], x - x0);
}

double airy_ai(double x) { return airy(x).ai; }

double airy_ai_prime(double x) { return airy(x).ai_prime; }

namespace {

// Leading asymptotic forms for the zeros, in the variable t = 3 pi (4n - c) / 8.
double zero_guess(double t, const std::array<double, 5>& coefficients) {
  const double inv_t2 = 1.0 / (t * t);
  double sum = 0.0;
  double power = 1.0;
  double last = INFINITY;
  for (double c : coefficients) {
    const double term = c * power;
    if (std::abs(term) > last) break;
    sum += term;
    last = std::abs(term);
    power *= inv_t2;
  }
  return std::cbrt(t * t) * sum;
}

// Newton polish of f(-x) = 0 with bisection fallback inside a bracket around the guess.
template <class Value, class Slope>
double polish_zero(double guess, Value value, Slope slope, const char* what, int n) {
  const double half_width = 0.45 * std::numbers::pi / std::sqrt(std::max(guess, 1.0));
  double lo = guess - half_width;
  double hi = guess + half_width;
  double x = guess;
  for (int it = 0; it < 60; ++it) {
    const double f = value(-x);
    const double df = -slope(-x);  // d/dx of f(-x)
    if (df == 0.0) break;
    const double step = f / df;
    x -= step;
    if (x < lo || x > hi) break;
    if (std::abs(step) <= 4e-16 * x) return x;
  }
  // Bisection on the bracket.
  double f_lo = value(-lo);
  double f_hi = value(-hi);
  if (f_lo * f_hi > 0.0) {
    throw NoConvergence(std::string(what) + ": no sign change bracketing zero " + std::to_string(n));
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = value(-mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double airy_zero(int n) {
  if (n < 1) throw InvalidSpec("airy_zero: n must be >= 1");
  const double t = 3.0 * std::numbers::pi * (4.0 * n - 1.0) / 8.0;
  const double guess = zero_guess(t, {1.0, 5.0 / 48.0, -5.0 / 36.0, 77125.0 / 82944.0,
                                      -108056875.0 / 6967296.0});
  return polish_zero(
      guess, [](double x) { return airy(x).ai; }, [](double x) { return airy(x).ai_prime; },
      "airy_zero", n);
}

double airy_prime_zero(int n) {
  if (n < 1) throw InvalidSpec("airy_prime_zero: n must be >= 1");
  const double t = 3.0 * std::numbers::pi * (4.0 * n - 3.0) / 8.0;
  const double guess = zero_guess(t, {1.0, -7.0 / 48.0, 35.0 / 288.0, -181223.0 / 207360.0,
                                      18683371.0 / 1244160.0});
  // Ai'' = x Ai.
  return polish_zero(
      guess, [](double x) { return airy(x).ai_prime; },
      [](double x) { return x * airy(x).ai; }, "airy_prime_zero", n);
}

AiryZeroTable airy_zero_table(int count) {
  AiryZeroTable table;
  table.ai_zeros.reserve(count);
  table.aiprime_zeros.reserve(count);
  for (int n = 1; n <= count; ++n) {
    table.ai_zeros.push_back(airy_zero(n));
    table.aiprime_zeros.push_back(airy_prime_zero(n));
  }
  return table;
}

}  // namespace momtail
