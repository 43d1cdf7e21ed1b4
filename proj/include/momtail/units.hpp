#pragma once

namespace momtail {

// Physical unit constants carried explicitly by every potential.
struct Units {
  double hbar = 1.0;
  double mass = 1.0;

  // 2m / hbar^2, the factor relating V and psi'' in the Schroedinger equation.
  constexpr double kinetic_factor() const { return 2.0 * mass / (hbar * hbar); }
};

}  // namespace momtail
