#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "momtail/potentials.hpp"
#include "momtail/units.hpp"

namespace momtail {

enum class Parity { even, odd, none };

std::string_view to_string(Parity parity);

/// One-sided derivatives psi^(j)(a-) and psi^(j)(a+) for j = 0..depth.
/// On the exterior side of an infinite wall every entry is zero.
struct DerivativeJet {
  double location = 0.0;
  std::vector<double> left;
  std::vector<double> right;

  int depth() const { return static_cast<int>(std::min(left.size(), right.size())) - 1; }
  double jump(int order) const { return right.at(order) - left.at(order); }
  double value() const { return right.empty() ? 0.0 : 0.5 * (left.at(0) + right.at(0)); }
};

/// Where the wavefunction lives, for quadrature: psi is negligible
/// (< 1e-18 of its peak) outside [support_min, support_max] and smooth between
/// consecutive breakpoints.
struct Support {
  double support_min = 0.0;
  double support_max = 0.0;
  std::vector<double> breakpoints;  // sorted, inside the support
  double smooth_length = 1.0;       // psi is well resolved by a few points per length
};

/// A normalized, real bound state.
struct BoundState {
  double energy = 0.0;
  int index = 0;
  Parity parity = Parity::none;
  std::function<double(double)> psi;
  std::vector<DerivativeJet> derivative_table;
  Support support;
  double momentum_scale = 1.0;  // classical turning momentum or decay momentum
  Units units;

  const DerivativeJet* jet_at(double location) const;
};

/// Orders tabulated by the analytic solvers (psi through psi^(6)).
inline constexpr int kDerivativeDepth = 6;

BoundState solve_delta(const PotentialSpec& spec);

/// n-th state (n = 0 ground) of a DeltaSum with any number of deltas.
BoundState solve_delta_sum(const PotentialSpec& spec, int n);

BoundState solve_infinite_well(double width, int n, const Units& units = {});

/// n = 0 is the ground state. Throws NoSuchState when the well holds fewer states.
BoundState solve_finite_well(const PotentialSpec& spec, int n);

BoundState solve_step_sum(const PotentialSpec& spec, int n);

/// Coefficients of psi = A e^{Kx} (x<0), B e^{-Kx} + C e^{Kx} (0<x<a), D e^{-Qx} (x>a).
struct HybridSolution {
  BoundState state;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
  double K = 0.0, Q = 0.0;
};

/// The single bound state of the delta + step system. Throws NoBoundState.
HybridSolution solve_hybrid_detailed(const PotentialSpec& spec);
BoundState solve_hybrid(const PotentialSpec& spec);

BoundState solve_bouncer(double force, int n, const Units& units = {});

/// n >= 1 counts states within the given parity: even energies E_0 eta_n,
/// odd energies E_0 zeta_n.
BoundState solve_symmetric_linear(double force, int n, Parity parity, const Units& units = {});

/// n >= 1 is the ground state.
BoundState solve_asymmetric_linear(const PotentialSpec& spec, int n);

/// Dispatches on the potential kind. n follows each family's own convention;
/// parity is only consulted for SymmetricLinear.
BoundState solve(const PotentialSpec& spec, int n, Parity parity = Parity::even);

/// Lowest valid state index for the kind (0 for piecewise-constant families, 1 otherwise).
int first_state_index(const PotentialSpec& spec);

/// int f(x) dx over the state's support with 16-point Gauss panels no wider
/// than smooth_length, split at every breakpoint. normalization_integral uses f = psi^2.
double position_integral(const BoundState& state, const std::function<double(double)>& f);
double normalization_integral(const BoundState& state);

/// Energies of all bound states of a piecewise-constant potential
/// (DeltaSum, FiniteWell, StepSum, HybridDeltaStep), ascending.
std::vector<double> piecewise_energies(const PotentialSpec& spec);

struct EnergyBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Eigenstate found by direct integration of the Schroedinger equation.
struct ShootingSolution {
  double energy = 0.0;
  int nodes = 0;
  std::vector<double> x;
  std::vector<double> psi;  // normalized on the grid (trapezoid)
};

/// Independent check on the analytic solvers: RK4 shooting from both ends,
/// matched by the Wronskian at an interior point, with bisection on energy.
/// n is the expected node count and is verified. Throws NoConvergence when the
/// defect does not change sign inside the bracket or the node count is wrong.
ShootingSolution shooting_oracle(const PotentialSpec& spec, EnergyBracket bracket, int n);

}  // namespace momtail
