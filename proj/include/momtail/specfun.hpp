#pragma once

#include <vector>

namespace momtail {

struct AiryPair {
  double ai = 0.0;
  double ai_prime = 0.0;
};

/// Ai(x) and Ai'(x) on the real line.
///
/// The evaluation combines a Maclaurin expansion around the origin, Taylor
/// re-expansion from a table of anchor points on [-10, 16], the integral
/// representation of K_{1/3} and K_{2/3} for large positive arguments and the
/// amplitude/phase asymptotic series for x < -10. Relative accuracy is better
/// than 1e-13 away from zeros; for x > ~104 the result underflows to zero.
AiryPair airy(double x);

double airy_ai(double x);
double airy_ai_prime(double x);

/// Magnitude of the n-th zero of Ai: Ai(-zeta_n) = 0, n >= 1.
/// Throws NoConvergence if the Newton/bisection polish fails.
double airy_zero(int n);

/// Magnitude of the n-th zero of Ai': Ai'(-eta_n) = 0, n >= 1.
double airy_prime_zero(int n);

struct AiryZeroTable {
  std::vector<double> ai_zeros;       // zeta_1 < zeta_2 < ...
  std::vector<double> aiprime_zeros;  // eta_1 < eta_2 < ...
};

AiryZeroTable airy_zero_table(int count);

namespace detail {

// Taylor expansion of a solution of y'' = x y about x0, stepped by h.
AiryPair airy_taylor_step(double x0, AiryPair at_x0, double h);

// Branch kernels, exposed for cross-checking the switchover points.
AiryPair airy_bessel_k(double x);       // x > 0
AiryPair airy_oscillatory(double x);    // x << 0

}  // namespace detail

}  // namespace momtail
