#include <cmath>

#include "catalog.hpp"
#include "doctest.h"
#include "momtail/error.hpp"
#include "momtail/potentials.hpp"

using namespace momtail;

TEST_CASE("discontinuity ledgers") {
  const auto delta = discontinuities(PotentialSpec(DeltaSum{{{1.0, 0.0}}}));
  REQUIRE(delta.size() == 1);
  CHECK(delta[0] == DiscontinuityRecord{0.0, -1, -1.0, false});

  const auto linear = discontinuities(PotentialSpec(SymmetricLinear{1.0}));
  REQUIRE(linear.size() == 1);
  CHECK(linear[0] == DiscontinuityRecord{0.0, 1, 2.0, false});

  const auto well = discontinuities(PotentialSpec(FiniteWell{7.0, -2.0, 3.0}));
  REQUIRE(well.size() == 2);
  CHECK(well[0] == DiscontinuityRecord{-2.0, 0, -7.0, false});
  CHECK(well[1] == DiscontinuityRecord{3.0, 0, 7.0, false});

  const auto box = discontinuities(PotentialSpec(InfiniteWell{2.0}));
  REQUIRE(box.size() == 2);
  CHECK(box[0].wall);
  CHECK(box[1].wall);
  CHECK(box[1].location == 2.0);

  const auto bouncer = discontinuities(PotentialSpec(Bouncer{1.0}));
  REQUIRE(bouncer.size() == 1);
  CHECK(bouncer[0].wall);
  CHECK(bouncer[0].order == -1);

  const auto hybrid = discontinuities(PotentialSpec(HybridDeltaStep{1.0, 2.0, 0.5}));
  REQUIRE(hybrid.size() == 2);
  CHECK(hybrid[0] == DiscontinuityRecord{0.0, -1, -1.0, false});
  CHECK(hybrid[1] == DiscontinuityRecord{0.5, 0, 2.0, false});

  const auto kink = discontinuities(PotentialSpec(AsymmetricLinear{0.5, 1.5}));
  REQUIRE(kink.size() == 1);
  CHECK(kink[0] == DiscontinuityRecord{0.0, 1, 2.0, false});
}

TEST_CASE("ledgers are sorted, stable and nonzero") {
  for (const auto& entry : catalog()) {
    CAPTURE(entry.name);
    const auto a = discontinuities(entry.spec);
    const auto b = discontinuities(entry.spec);
    CHECK(a == b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].wall) CHECK(a[i].jump != 0.0);
      if (i > 0) {
        CHECK((a[i - 1].location < a[i].location ||
               (a[i - 1].location == a[i].location && a[i - 1].order < a[i].order)));
      }
    }
  }
}

TEST_CASE("pointwise values") {
  CHECK(*evaluate(PotentialSpec(Bouncer{1.0}), 2.0) == 2.0);
  CHECK_FALSE(evaluate(PotentialSpec(Bouncer{1.0}), -1.0).has_value());
  CHECK(*evaluate(PotentialSpec(SymmetricLinear{3.0}), -2.0) == 6.0);
  CHECK(*evaluate(PotentialSpec(AsymmetricLinear{1.0, 2.0}), -2.0) == 4.0);
  CHECK(*evaluate(PotentialSpec(AsymmetricLinear{1.0, 2.0}), 3.0) == 3.0);
  CHECK_FALSE(evaluate(PotentialSpec(InfiniteWell{1.0}), 1.5).has_value());
  CHECK(*evaluate(PotentialSpec(InfiniteWell{1.0}), 0.5) == 0.0);
  CHECK(*evaluate(PotentialSpec(FiniteWell{5.0, -1.0, 1.0}), 0.0) == -5.0);
  CHECK(*evaluate(PotentialSpec(FiniteWell{5.0, -1.0, 1.0}), 2.0) == 0.0);
  // Right-hand value at a step.
  CHECK(*evaluate(PotentialSpec(HybridDeltaStep{1.0, 2.0, 1.0}), 1.0) == 2.0);
  CHECK(*evaluate(PotentialSpec(DeltaSum{{{1.0, 0.0}}}), 0.0) == 0.0);
}

TEST_CASE("finite-difference one-sided limits reproduce finite-order jumps") {
  const double h = 1e-6;
  for (const auto& entry : catalog()) {
    CAPTURE(entry.name);
    for (const auto& r : discontinuities(entry.spec)) {
      if (r.order < 0) continue;
      double jump = 0.0;
      if (r.order == 0) {
        jump = *evaluate(entry.spec, r.location + h) - *evaluate(entry.spec, r.location - h);
      } else {
        REQUIRE(r.order == 1);
        const double right = (*evaluate(entry.spec, r.location + 2 * h) - *evaluate(entry.spec, r.location + h)) / h;
        const double left = (*evaluate(entry.spec, r.location - h) - *evaluate(entry.spec, r.location - 2 * h)) / h;
        jump = right - left;
      }
      CHECK(std::abs(jump - r.jump) < 1e-8 * std::max(1.0, std::abs(r.jump)));
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PotentialSpec(DeltaSum{}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(DeltaSum{{{-1.0, 0.0}}}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(DeltaSum{{{1.0, 1.0}, {1.0, 0.0}}}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(InfiniteWell{0.0}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(FiniteWell{1.0, 1.0, -1.0}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(FiniteWell{-1.0, -1.0, 1.0}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(StepSum{{{0.0, 0.0}}}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(HybridDeltaStep{1.0, 1.0, -1.0}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(Bouncer{0.0}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(SymmetricLinear{NAN}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(AsymmetricLinear{1.0, -1.0}), InvalidSpec);
  CHECK_THROWS_AS(PotentialSpec(Bouncer{1.0}, Units{0.0, 1.0}), InvalidSpec);
}

TEST_CASE("airy scales") {
  CHECK(airy_length(0.5, Units{}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(airy_energy(0.5, Units{}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(airy_length(4.0, Units{}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(airy_length(1.0, Units{2.0, 0.5}) == doctest::Approx(std::cbrt(4.0)).epsilon(1e-15));
}

TEST_CASE("kind names") {
  CHECK(PotentialSpec(Bouncer{}).kind_name() == "Bouncer");
  CHECK(PotentialSpec(HybridDeltaStep{}).kind_name() == "HybridDeltaStep");
  CHECK(PotentialSpec(FiniteWell{}).get_if<FiniteWell>() != nullptr);
  CHECK(PotentialSpec(FiniteWell{}).get_if<Bouncer>() == nullptr);
}
