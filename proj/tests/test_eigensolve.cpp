#include <cmath>
#include <iterator>

#include "catalog.hpp"
#include "doctest.h"
#include "momtail/eigensolve.hpp"
#include "momtail/error.hpp"
#include "momtail/specfun.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace momtail;

namespace {

std::vector<BoundState> catalog_states(const CatalogEntry& entry) {
  std::vector<BoundState> out;
  for (int n : entry.states) out.push_back(solve(entry.spec, n, entry.parity));
  return out;
}

double peak(const BoundState& s) {
  double m = 0.0;
  const double step = (s.support.support_max - s.support.support_min) / 4000.0;
  for (double x = s.support.support_min; x <= s.support.support_max; x += step) m = std::max(m, std::abs(s.psi(x)));
  return m;
}

}  // namespace

TEST_CASE("single delta") {
  const PotentialSpec spec(DeltaSum{{{1.0, 0.0}}});
  const BoundState s = solve_delta(spec);
  CHECK(s.energy == -0.5);
  CHECK(s.psi(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.psi(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  const DerivativeJet* jet = s.jet_at(0.0);
  REQUIRE(jet != nullptr);
  CHECK(jet->jump(1) == doctest::Approx(-2.0).epsilon(1e-15));

  CHECK(solve_delta(PotentialSpec(DeltaSum{{{2.0, 0.0}}})).energy == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(solve_delta(PotentialSpec(DeltaSum{{{1.0, 0.0}}}, Units{1.0, 2.0})).energy ==
        doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_THROWS_AS(solve_delta(PotentialSpec(DeltaSum{{{1.0, 0.0}, {1.0, 1.0}}})), InvalidSpec);
}

TEST_CASE("delta sums") {
  // Two equal deltas: a symmetric and an antisymmetric state around the single-delta level.
  const PotentialSpec spec(DeltaSum{{{1.0, -2.0}, {1.0, 2.0}}});
  const BoundState even = solve(spec, 0);
  const BoundState odd = solve(spec, 1);
  CHECK(even.energy < -0.5);
  CHECK(odd.energy > -0.5);
  // kappa = (m g / hbar^2) (1 +- e^{-2 kappa a}) with the deltas at +-a, a = 2.
  for (const auto& [s, sign] : {std::pair{&even, 1.0}, std::pair{&odd, -1.0}}) {
    const double kappa = std::sqrt(-2.0 * s->energy);
    CHECK(std::abs(kappa - 1.0 - sign * std::exp(-4.0 * kappa)) < 1e-10);
    CHECK(s->psi(-1.0) == doctest::Approx(sign * s->psi(1.0)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(solve(spec, 2), NoSuchState);
  // Weak, close deltas hold a single state.
  CHECK_THROWS_AS(solve(PotentialSpec(DeltaSum{{{0.2, 0.0}, {0.2, 0.5}}}), 1), NoSuchState);
}

TEST_CASE("infinite well") {
  const BoundState one = solve_infinite_well(M_PI, 1);
  CHECK(one.energy == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(one.jet_at(0.0)->right[1] == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-15));
  CHECK(one.jet_at(0.0)->left[1] == 0.0);
  const BoundState two = solve_infinite_well(M_PI, 2);
  CHECK(two.jet_at(M_PI)->left[1] == doctest::Approx(2.0 * std::sqrt(2.0 / M_PI)).epsilon(1e-15));
  CHECK(two.jet_at(M_PI)->right[1] == 0.0);
  for (int n : {2, 4, 6}) CHECK(std::abs(solve_infinite_well(M_PI, n).psi(M_PI / 2)) < 1e-15);
  CHECK(solve_infinite_well(M_PI, 1).psi(-0.1) == 0.0);
  CHECK(solve_infinite_well(2.0, 3).energy == doctest::Approx(9.0 * M_PI * M_PI / 8.0).epsilon(1e-15));
  CHECK_THROWS_AS(solve_infinite_well(M_PI, 0), NoSuchState);
}

TEST_CASE("finite well") {
  const PotentialSpec spec(FiniteWell{10.0, -1.0, 1.0});
  for (std::size_t n = 0; n < std::size(oracle::finite_well_10_energies); ++n) {
    CHECK(solve(spec, static_cast<int>(n)).energy ==
          doctest::Approx(oracle::finite_well_10_energies[n]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(solve(spec, 3), NoSuchState);
  CHECK(piecewise_energies(spec).size() == 3);

  const BoundState ground = solve(spec, 0);
  CHECK(ground.parity == Parity::even);
  for (double x : {0.3, 0.9, 1.5, 3.0}) CHECK(ground.psi(-x) == doctest::Approx(ground.psi(x)).epsilon(1e-12));
  const BoundState first = solve(spec, 1);
  CHECK(first.parity == Parity::odd);
  CHECK(first.psi(-0.5) == doctest::Approx(-first.psi(0.5)).epsilon(1e-12));

  const ShootingSolution shot = shooting_oracle(spec, {-9.5, -8.5}, 0);
  CHECK(std::abs(shot.energy - ground.energy) < 1e-6);

  // Deep limit: levels measured from the floor approach the infinite well.
  const PotentialSpec deep(FiniteWell{1e4, 0.0, M_PI});
  for (int n = 0; n < 3; ++n) {
    const double e = solve(deep, n).energy + 1e4;
    const double box = solve_infinite_well(M_PI, n + 1).energy;
    CAPTURE(n);
    CHECK(std::abs(e - box) / box < 0.01);
  }
}

TEST_CASE("step sums") {
  CHECK_THROWS_AS(solve(PotentialSpec(StepSum{{{1.0, 0.0}}}), 0), NoBoundState);
  // Two opposite steps form a finite well offset in energy.
  const BoundState step = solve(PotentialSpec(StepSum{{{-10.0, -1.0}, {10.0, 1.0}}}), 0);
  CHECK(step.energy == doctest::Approx(oracle::finite_well_10_energies[0]).epsilon(1e-12));
  // A well with an asymmetric shelf on one side.
  const PotentialSpec shelf(StepSum{{{-8.0, -1.0}, {3.0, 0.5}, {5.0, 1.5}}});
  const auto levels = piecewise_energies(shelf);
  REQUIRE(levels.size() >= 2);
  const ShootingSolution shot = shooting_oracle(shelf, {levels[1] - 0.05, levels[1] + 0.05}, 1);
  CHECK(std::abs(shot.energy - levels[1]) < 1e-6);
}

TEST_CASE("hybrid delta plus step") {
  CHECK(solve(PotentialSpec(HybridDeltaStep{1.0, 0.0, 1.0}), 0).energy == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(std::abs(solve(PotentialSpec(HybridDeltaStep{1.0, 1.0, 30.0}), 0).energy + 0.5) < 1e-10);
  CHECK(std::abs(solve(PotentialSpec(HybridDeltaStep{1.0, 1.0, 8.0}), 0).energy + 0.5) < 1e-5);

  const PotentialSpec spec(HybridDeltaStep{1.0, 1.0, 1.0});
  const HybridSolution h = solve_hybrid_detailed(spec);
  const BoundState& s = h.state;
  CHECK(s.energy == doctest::Approx(oracle::hybrid_111_energy).epsilon(1e-13));
  CHECK(solve(PotentialSpec(HybridDeltaStep{1.0, 2.0, 0.5}), 0).energy ==
        doctest::Approx(oracle::hybrid_125_energy).epsilon(1e-13));

  CHECK(h.K == doctest::Approx(std::sqrt(-2.0 * s.energy)).epsilon(1e-14));
  CHECK(h.Q == doctest::Approx(std::sqrt(2.0 * (1.0 - s.energy))).epsilon(1e-14));
  CHECK(s.psi(-0.7) == doctest::Approx(h.A * std::exp(h.K * -0.7)).epsilon(1e-13));
  CHECK(s.psi(0.4) == doctest::Approx(h.B * std::exp(-h.K * 0.4) + h.C * std::exp(h.K * 0.4)).epsilon(1e-13));
  CHECK(s.psi(2.5) == doctest::Approx(h.D * std::exp(-h.Q * 2.5)).epsilon(1e-13));

  const DerivativeJet* at0 = s.jet_at(0.0);
  const DerivativeJet* ata = s.jet_at(1.0);
  REQUIRE(at0 != nullptr);
  REQUIRE(ata != nullptr);
  CHECK(std::abs(at0->jump(1) + 2.0 * s.psi(0.0)) < 1e-8);
  CHECK(std::abs(ata->jump(2) - 2.0 * s.psi(1.0)) < 1e-8);
  CHECK(std::abs(ata->jump(1)) < 1e-10);

  CHECK_THROWS_AS(solve(spec, 1), NoSuchState);
  CHECK_THROWS_AS(solve(PotentialSpec(HybridDeltaStep{0.2, -3.0, 1.0}), 0), NoBoundState);
}

TEST_CASE("quantum bouncer") {
  const double zeta1 = airy_zero(1);
  const BoundState one = solve_bouncer(0.5, 1);
  CHECK(one.energy == doctest::Approx(0.5 * zeta1).epsilon(1e-14));
  for (int n : {1, 2, 5, 10}) {
    const BoundState s = solve_bouncer(0.5, n);
    CAPTURE(n);
    CHECK(s.psi(0.0) == 0.0);
    CHECK(s.psi(-1.0) == 0.0);
    CHECK(s.jet_at(0.0)->right[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.jet_at(0.0)->left[1] == 0.0);
  }
  const BoundState three = solve_bouncer(0.5, 3);
  for (std::size_t i = 0; i < std::size(oracle::bouncer3_z); ++i) {
    CHECK(std::abs(three.psi(oracle::bouncer3_z[i]) - oracle::bouncer3_psi[i]) < 1e-13);
  }
  // Force F = 4 gives rho = 1/2: E_n = F rho zeta_n and psi'(0+) = rho^{-3/2}.
  const BoundState scaled = solve_bouncer(4.0, 2);
  CHECK(scaled.energy == doctest::Approx(2.0 * airy_zero(2)).epsilon(1e-14));
  CHECK(scaled.jet_at(0.0)->right[1] == doctest::Approx(std::pow(0.5, -1.5)).epsilon(1e-13));
  CHECK_THROWS_AS(solve_bouncer(0.5, 0), NoSuchState);
}

TEST_CASE("symmetric linear potential") {
  const double eta1 = airy_prime_zero(1);
  const BoundState even = solve_symmetric_linear(0.5, 1, Parity::even);
  CHECK(even.energy == doctest::Approx(0.5 * eta1).epsilon(1e-14));
  CHECK(even.psi(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * eta1)).epsilon(1e-13));
  for (int n = 1; n <= 5; ++n) {
    const BoundState e = solve_symmetric_linear(0.5, n, Parity::even);
    const BoundState o = solve_symmetric_linear(0.5, n, Parity::odd);
    CAPTURE(n);
    CHECK(e.energy == doctest::Approx(0.5 * airy_prime_zero(n)).epsilon(1e-14));
    CHECK(o.energy == doctest::Approx(0.5 * airy_zero(n)).epsilon(1e-14));
    const DerivativeJet* je = e.jet_at(0.0);
    const DerivativeJet* jo = o.jet_at(0.0);
    REQUIRE(je != nullptr);
    REQUIRE(jo != nullptr);
    CHECK(std::abs(je->jump(3) - 2.0 * e.psi(0.0)) < 1e-8);
    CHECK(std::abs(jo->value()) < 1e-14);
    CHECK(std::abs(jo->jump(3)) < 1e-12);
    CHECK(std::abs(jo->jump(4) - 4.0 * jo->right[1]) < 1e-8);
    CHECK(jo->jump(4) != 0.0);
    CHECK(e.psi(-1.3) == doctest::Approx(e.psi(1.3)).epsilon(1e-13));
    CHECK(o.psi(-1.3) == doctest::Approx(-o.psi(1.3)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(solve_symmetric_linear(0.5, 1, Parity::none), InvalidSpec);
}

TEST_CASE("asymmetric linear potential") {
  // Equal slopes reproduce the symmetric ladder, alternating parities.
  const PotentialSpec equal(AsymmetricLinear{0.5, 0.5});
  CHECK(solve(equal, 1).energy == doctest::Approx(0.5 * airy_prime_zero(1)).epsilon(1e-10));
  CHECK(solve(equal, 2).energy == doctest::Approx(0.5 * airy_zero(1)).epsilon(1e-10));
  CHECK(solve(equal, 3).energy == doctest::Approx(0.5 * airy_prime_zero(2)).epsilon(1e-10));

  const PotentialSpec spec(AsymmetricLinear{0.5, 1.5});
  for (int n = 1; n <= 4; ++n) {
    const BoundState s = solve(spec, n);
    const ShootingSolution shot = shooting_oracle(spec, {s.energy - 1e-3, s.energy + 1e-3}, n - 1);
    CAPTURE(n);
    CHECK(std::abs(shot.energy - s.energy) < 1e-8);
  }
}

TEST_CASE("shooting oracle agrees with the Airy solvers") {
  const PotentialSpec bouncer(Bouncer{0.5});
  const PotentialSpec linear(SymmetricLinear{0.5});
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    const double zeta = airy_zero(n), eta = airy_prime_zero(n);
    const ShootingSolution b = shooting_oracle(bouncer, {0.5 * zeta - 0.05, 0.5 * zeta + 0.05}, n - 1);
    CHECK(std::abs(b.energy - 0.5 * zeta) < 1e-8);
    const ShootingSolution e = shooting_oracle(linear, {0.5 * eta - 0.05, 0.5 * eta + 0.05}, 2 * (n - 1));
    CHECK(std::abs(e.energy - 0.5 * eta) < 1e-8);
    const ShootingSolution o = shooting_oracle(linear, {0.5 * zeta - 0.05, 0.5 * zeta + 0.05}, 2 * n - 1);
    CHECK(std::abs(o.energy - 0.5 * zeta) < 1e-8);
  }
  // The wavefunctions agree as well.
  const ShootingSolution shot = shooting_oracle(bouncer, {1.0, 1.3}, 0);
  const BoundState s = solve_bouncer(0.5, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < shot.x.size(); i += 50) worst = std::max(worst, std::abs(shot.psi[i] - s.psi(shot.x[i])));
  CHECK(worst < 1e-6);

  CHECK_THROWS_AS(shooting_oracle(bouncer, {1.0, 1.1}, 0), NoConvergence);
  CHECK_THROWS_AS(shooting_oracle(bouncer, {1.0, 1.3}, 1), NoConvergence);
  CHECK_THROWS_AS(shooting_oracle(bouncer, {1.3, 1.0}, 0), InvalidSpec);
}

TEST_CASE("normalization and continuity across the catalog") {
  for (const auto& entry : catalog()) {
    for (const BoundState& s : catalog_states(entry)) {
      CAPTURE(entry.name);
      CAPTURE(s.index);
      CHECK(std::abs(gk_integral(s, [&](double x) { return s.psi(x) * s.psi(x); }) - 1.0) < 1e-8);
      CHECK(std::abs(normalization_integral(s) - 1.0) < 1e-8);
      const double scale = peak(s);
      for (const auto& r : discontinuities(entry.spec)) {
        const DerivativeJet* jet = s.jet_at(r.location);
        REQUIRE(jet != nullptr);
        CHECK(std::abs(jet->jump(0)) < 1e-10 * scale);
        CHECK(std::abs(s.psi(r.location + 1e-13) - s.psi(r.location - 1e-13)) < 1e-10 * scale);
        CHECK(jet->depth() >= kDerivativeDepth);
      }
    }
  }
}

TEST_CASE("jump conditions across the catalog") {
  for (const auto& entry : catalog()) {
    const double kf = entry.spec.units().kinetic_factor();
    for (const BoundState& s : catalog_states(entry)) {
      CAPTURE(entry.name);
      CAPTURE(s.index);
      for (const auto& r : discontinuities(entry.spec)) {
        const DerivativeJet* jet = s.jet_at(r.location);
        if (r.wall) {
          const bool exterior_left = !evaluate(entry.spec, r.location - 1e-9);
          for (double v : exterior_left ? jet->left : jet->right) CHECK(v == 0.0);
          CHECK(std::abs(jet->value()) < 1e-14);
          continue;
        }
        if (r.order == -1) {
          CHECK(std::abs(jet->jump(1) - kf * r.jump * jet->value()) < 1e-8);
          continue;
        }
        const double psi_a = jet->value();
        if (std::abs(psi_a) > 1e-12) {
          CHECK(std::abs(jet->jump(r.order + 2) - kf * r.jump * psi_a) < 1e-8);
        } else {
          CHECK(std::abs(jet->jump(r.order + 2)) < 1e-8);
          CHECK(std::abs(jet->jump(r.order + 3) - (r.order + 1) * kf * r.jump * jet->right[1]) < 1e-8);
        }
        for (int j = 0; j < r.order + 2; ++j) CHECK(std::abs(jet->jump(j)) < 1e-8);
      }
    }
  }
}

TEST_CASE("derivative tables match one-sided finite differences") {
  for (const auto& entry : catalog()) {
    for (const BoundState& s : catalog_states(entry)) {
      CAPTURE(entry.name);
      CAPTURE(s.index);
      const double h = 0.02 * s.support.smooth_length;
      for (const auto& jet : s.derivative_table) {
        for (double side : {-1.0, 1.0}) {
          const auto& table = side > 0 ? jet.right : jet.left;
          if (!evaluate(entry.spec, jet.location + side * 1e-9)) continue;  // wall exterior
          const auto fd = one_sided_derivatives(s.psi, jet.location, side, h);
          for (int j = 0; j <= 3; ++j) {
            CAPTURE(j);
            CAPTURE(side);
            const double scale = std::pow(1.0 / s.support.smooth_length, j);
            CHECK(std::abs(fd[j] - table[j]) < 1e-5 * std::max(1.0, scale));
          }
        }
      }
    }
  }
}

TEST_CASE("Schroedinger residual away from discontinuities") {
  const double h = 4e-4;
  for (const auto& entry : catalog()) {
    const double kf = entry.spec.units().kinetic_factor();
    const auto records = discontinuities(entry.spec);
    for (const BoundState& s : catalog_states(entry)) {
      CAPTURE(entry.name);
      CAPTURE(s.index);
      double worst = 0.0;
      const double lo = s.support.support_min, hi = s.support.support_max;
      for (int i = 0; i <= 3000; ++i) {
        const double x = lo + (hi - lo) * i / 3000.0;
        bool near = false;
        for (const auto& r : records) near = near || std::abs(x - r.location) < 1e-3;
        const auto v = evaluate(entry.spec, x);
        if (near || !v || !evaluate(entry.spec, x - 2 * h) || !evaluate(entry.spec, x + 2 * h)) continue;
        const double second = (-s.psi(x + 2 * h) + 16 * s.psi(x + h) - 30 * s.psi(x) + 16 * s.psi(x - h) -
                               s.psi(x - 2 * h)) /
                              (12 * h * h);
        worst = std::max(worst, std::abs(-second / kf + (*v - s.energy) * s.psi(x)));
      }
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("orthonormality of the first states") {
  for (const auto& entry : catalog()) {
    if (entry.states.size() < 2) continue;
    const auto states = catalog_states(entry);
    CAPTURE(entry.name);
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = i; j < states.size(); ++j) {
        BoundState merged = states[i];
        const auto& other = states[j];
        merged.support.support_min = std::min(merged.support.support_min, other.support.support_min);
        merged.support.support_max = std::max(merged.support.support_max, other.support.support_max);
        merged.support.smooth_length = std::min(merged.support.smooth_length, other.support.smooth_length);
        const double overlap =
            gk_integral(merged, [&](double x) { return states[i].psi(x) * other.psi(x); });
        CAPTURE(i);
        CAPTURE(j);
        CHECK(std::abs(overlap - (i == j ? 1.0 : 0.0)) < 1e-6);
      }
    }
  }
  // Even and odd symmetric-linear states are mutually orthogonal.
  const BoundState e = solve_symmetric_linear(0.5, 2, Parity::even);
  const BoundState o = solve_symmetric_linear(0.5, 2, Parity::odd);
  CHECK(std::abs(gk_integral(e, [&](double x) { return e.psi(x) * o.psi(x); })) < 1e-10);
}

TEST_CASE("dispatch conventions") {
  CHECK(first_state_index(PotentialSpec(Bouncer{})) == 1);
  CHECK(first_state_index(PotentialSpec(InfiniteWell{})) == 1);
  CHECK(first_state_index(PotentialSpec(FiniteWell{})) == 0);
  CHECK(first_state_index(PotentialSpec(DeltaSum{{{1.0, 0.0}}})) == 0);
  CHECK(solve(PotentialSpec(SymmetricLinear{0.5}), 2, Parity::odd).parity == Parity::odd);
  CHECK(to_string(Parity::even) == "even");
  CHECK(to_string(Parity::odd) == "odd");
}
