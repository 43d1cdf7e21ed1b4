#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "momtail/eigensolve.hpp"
#include "momtail/potentials.hpp"

namespace momtail {

/// One term T_n of the large-p expansion
///   phi(p) ~ (2 pi hbar)^{-1/2} sum_a sum_n (-i)^n [psi^(n-1)(a+) - psi^(n-1)(a-)] e^{-ipa/hbar} (hbar/p)^n.
struct TailTerm {
  double location = 0.0;
  int order = 1;      // power of hbar/p
  double jump = 0.0;  // psi^(order-1)(a+) - psi^(order-1)(a-)
  std::complex<double> phase_prefactor{1.0, 0.0};  // (-i)^order

  /// Coefficient of e^{-ipa/hbar} p^{-order}: (-i)^n jump hbar^n / sqrt(2 pi hbar).
  std::complex<double> coefficient(const Units& units) const;
  std::complex<double> contribution(double p, const Units& units) const;
};

inline constexpr int kDefaultExpansionOrder = 6;

struct TailPrediction {
  std::vector<TailTerm> terms;
  int leading_exponent = 0;
  Units units;

  /// Sum of all terms with order <= max_order at momentum p.
  std::complex<double> sum(double p, int max_order) const;
  std::complex<double> leading_sum(double p) const { return sum(p, leading_exponent); }
  /// |sum of leading-order contributions| (phases summed across locations).
  double leading_envelope(double p) const { return std::abs(leading_sum(p)); }
  /// p^m |leading sum| averaged over interference: sqrt(sum_a |c_a|^2) hbar^m / sqrt(2 pi hbar).
  /// Equals the exact limit of p^m |phi| when one location contributes.
  double leading_coefficient() const;
};

/// Every term of order 1..N at each record location, jumps read from the
/// derivative table. Throws InsufficientDerivativeDepth when the table is too short.
std::vector<TailTerm> expansion_terms(const BoundState& state,
                                      const std::vector<DiscontinuityRecord>& records,
                                      int max_order = kDefaultExpansionOrder);

struct PredictedJump {
  int derivative_order = 0;  // jump is in psi^(derivative_order)
  double jump = 0.0;
};

/// Jump implied by the potential and psi(a) alone (psi'(a) when psi(a) = 0):
///   k >= 0:  psi^(k+2) jumps by (2m/hbar^2) dV psi(a), or psi^(k+3) by (k+1)(2m/hbar^2) dV psi'(a);
///   delta:   psi' jumps by (2m/hbar^2) * record.jump * psi(a).
/// Walls give std::nullopt. Throws UnsupportedCase when psi(a) and psi'(a) both vanish.
std::optional<PredictedJump> jump_from_potential(const DiscontinuityRecord& record,
                                                 const BoundState& state);

/// Terms through order N plus the two-route check of every jump.
/// Throws InconsistentJumps if the table and the potential route disagree by > 1e-8.
TailPrediction predict_tail(const BoundState& state, const std::vector<DiscontinuityRecord>& records,
                            int max_order = kDefaultExpansionOrder);

/// Exponent rule from the records alone: k + 3 for a discontinuity of order k,
/// k + 4 where psi vanishes, 2 at a wall; minimum over records.
int expected_leading_exponent(const BoundState& state,
                              const std::vector<DiscontinuityRecord>& records);

}  // namespace momtail
