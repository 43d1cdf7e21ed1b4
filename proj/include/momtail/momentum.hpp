#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "momtail/eigensolve.hpp"
#include "momtail/potentials.hpp"

namespace momtail {

enum class Provenance { closed_form, quadrature };

/// phi(p) = (2 pi hbar)^{-1/2} int psi(x) e^{-ipx/hbar} dx sampled on a grid.
/// phi_re is the cosine transform, phi_im minus the sine transform.
struct MomentumSamples {
  std::vector<double> grid;
  std::vector<double> phi_re;
  std::vector<double> phi_im;
  Provenance provenance = Provenance::quadrature;

  std::size_t size() const { return grid.size(); }
  std::complex<double> phi(std::size_t i) const { return {phi_re[i], phi_im[i]}; }
  double abs2(std::size_t i) const { return phi_re[i] * phi_re[i] + phi_im[i] * phi_im[i]; }
};

using PhiFunction = std::function<std::complex<double>(double)>;

/// Uniform grid with count >= 2 points on [min, max].
std::vector<double> linear_grid(double min, double max, int count);

/// Log-spaced grid from min to max (both > 0), per_decade points per decade,
/// endpoints included.
std::vector<double> log_grid(double min, double max, int per_decade);

/// Exact transform of a DeltaSum state: sum over deltas of g_i psi(a_i) e^{-ipa_i/hbar}
/// times (2m/hbar^2) / ((kappa^2 + p^2/hbar^2) sqrt(2 pi hbar)).
std::complex<double> phi_delta_at(const PotentialSpec& spec, const BoundState& state, double p);
MomentumSamples phi_closed_delta(const PotentialSpec& spec, const BoundState& state,
                                 const std::vector<double>& grid);

/// Exact infinite-well transform; smooth through p = +-p_n.
std::complex<double> phi_well_at(double width, int n, double p, const Units& units = {});
MomentumSamples phi_closed_well(double width, int n, const std::vector<double>& grid,
                                const Units& units = {});

struct QuadratureOptions {
  long panel_budget = 50'000'000;  // Gauss panels per momentum value
};

/// Oscillatory quadrature over half-period panels with 16-point Gauss rules.
/// Absolute accuracy is ~1e-15 when psi is resolved by smooth_length.
std::complex<double> phi_quadrature_at(const BoundState& state, double p,
                                       const QuadratureOptions& options = {});

/// Evaluates every grid point (in parallel); phi(-p) is taken as conj(phi(p)).
MomentumSamples phi_quadrature(const BoundState& state, const std::vector<double>& grid,
                               const QuadratureOptions& options = {});

/// Closed form when the family has one (DeltaSum, InfiniteWell), else quadrature.
PhiFunction phi_function(const PotentialSpec& spec, const BoundState& state);
MomentumSamples transform(const PotentialSpec& spec, const BoundState& state,
                          const std::vector<double>& grid);

/// Smallest n with a nonzero jump in psi^(n-1) at some discontinuity:
/// |phi| ~ p^{-n}. Reads the state's derivative table.
int leading_tail_order(const BoundState& state);

/// <p^k> = int p^k |phi|^2 dp for even k. Gauss panels on [0, p_cut] plus the
/// analytic integral of the tabulated asymptotic series beyond p_cut.
/// Odd k gives 0. Throws DivergentMoment when k >= 2 n - 1, n the leading order.
double moment(const BoundState& state, int k, const PhiFunction& phi, double p_cut);

/// Moment from closed forms where available (p_cut = 2000 p_scale), otherwise
/// by quadrature (p_cut = 20 p_scale).
double moment(const PotentialSpec& spec, const BoundState& state, int k);

/// Moment from numerical quadrature of phi regardless of the family.
double moment_quadrature(const BoundState& state, int k);

/// Trapezoid int p^k |phi|^2 over the samples (doubled when the grid is one-sided, p >= 0).
double moment(const MomentumSamples& samples, int k);

/// Trapezoid int |phi|^2 dp over the samples (doubled for one-sided grids).
double parseval(const MomentumSamples& samples);

/// Symmetric uniform grid for a Parseval check: extends until the analytic
/// tail beyond the end holds < tail_mass of probability, with spacing that
/// resolves the support width.
std::vector<double> parseval_grid(const BoundState& state, double tail_mass = 1e-6);

/// Classical flat density 1/(2 Q) on [-Q, Q], Q = sqrt(2 m E).
double classical_momentum_density(const BoundState& state, double p);

/// Bouncer (parity ignored) or SymmetricLinear state n of the given parity.
double classical_momentum_density(const PotentialSpec& spec, int n, double p,
                                  Parity parity = Parity::even);

}  // namespace momtail
