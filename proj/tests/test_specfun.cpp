#include <cmath>
#include <iterator>

#include "doctest.h"
#include "momtail/error.hpp"
#include "momtail/specfun.hpp"
#include "oracle_values.hpp"

using namespace momtail;

namespace {

// Two-series Maclaurin form summed in long double; an oracle independent of
// the anchor tables used by the library.
AiryPair maclaurin(double xd) {
  const long double x = xd;
  const long double c1 = 0.355028053887817239260063186004183176L;
  const long double c2 = 0.258819403792806798405183560189203963L;
  const long double x3 = x * x * x;
  long double f = 0, fp = 0, g = 0, gp = 0;
  long double a = 1;  // coefficient of x^{3k} in f
  long double b = 1;  // coefficient of x^{3k+1} in g
  long double pk = 1;  // x^{3k}
  long double pm = 0;  // x^{3k-1}
  for (int k = 0; k < 60; ++k) {
    f += a * pk;
    fp += 3 * k * a * pm;
    g += b * pk * x;
    gp += (3 * k + 1) * b * pk;
    a /= (3.0L * k + 2) * (3.0L * k + 3);
    b /= (3.0L * k + 3) * (3.0L * k + 4);
    pm = (k == 0 ? x * x : pm * x3);
    pk *= x3;
  }
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

TEST_CASE("airy values at the origin") {
  CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-15));
  CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.2588194037928068).epsilon(1e-15));
}

TEST_CASE("airy against mpmath reference values") {
  for (std::size_t i = 0; i < std::size(oracle::airy_x); ++i) {
    const double x = oracle::airy_x[i];
    const AiryPair v = airy(x);
    CAPTURE(x);
    // Near-zero values are compared absolutely against the local amplitude.
    const double scale_ai = x < 0 ? std::pow(-x, -0.25) : std::abs(oracle::airy_ai[i]);
    const double scale_aip = x < 0 ? std::pow(-x, 0.25) : std::abs(oracle::airy_aip[i]);
    CHECK(std::abs(v.ai - oracle::airy_ai[i]) <= 1e-13 * scale_ai);
    CHECK(std::abs(v.ai_prime - oracle::airy_aip[i]) <= 1e-13 * scale_aip);
    CHECK(airy_ai(x) == v.ai);
    CHECK(airy_ai_prime(x) == v.ai_prime);
  }
}

TEST_CASE("airy agrees with its power series on |x| <= 2") {
  for (double x = -2.0; x <= 2.0 + 1e-12; x += 0.03125) {
    const AiryPair want = maclaurin(x);
    const AiryPair got = airy(x);
    CAPTURE(x);
    CHECK(std::abs(got.ai - want.ai) < 1e-13);
    CHECK(std::abs(got.ai_prime - want.ai_prime) < 1e-13);
  }
}

TEST_CASE("airy ODE residual by finite differences on [-10, 5]") {
  const double h = 5e-3;
  double worst = 0.0;
  for (double x = -10.0; x <= 5.0; x += 0.0137) {
    const double second = (-airy_ai(x + 2 * h) + 16 * airy_ai(x + h) - 30 * airy_ai(x) + 16 * airy_ai(x - h) -
                           airy_ai(x - 2 * h)) /
                          (12 * h * h);
    worst = std::max(worst, std::abs(second - x * airy_ai(x)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("airy derivative is consistent with Ai on both sides of every switchover") {
  for (double x : {-10.0, -5.0, 5.0, 8.0, 16.0}) {
    for (double s : {-1e-9, 1e-9}) {
      const double h = 1e-4;
      const double fd = (airy_ai(x + s + h) - airy_ai(x + s - h)) / (2 * h);
      CAPTURE(x + s);
      CHECK(fd == doctest::Approx(airy_ai_prime(x + s)).epsilon(1e-7));
    }
  }
}

TEST_CASE("airy on the positive axis") {
  double previous = airy_ai(0.0);
  for (double x = 0.1; x < 100.0; x += 0.1) {
    const double v = airy_ai(x);
    CHECK(v > 0.0);
    CHECK(v < previous);
    CHECK(airy_ai_prime(x) < 0.0);
    previous = v;
  }
  CHECK(airy_ai(200.0) == doctest::Approx(0.0));
  CHECK(airy_ai_prime(0.0) < 0.0);
}

TEST_CASE("airy branch kernels agree where they overlap") {
  for (double x : {6.0, 10.0, 14.0}) {
    const AiryPair k = detail::airy_bessel_k(x);
    CHECK(rel(k.ai, airy_ai(x)) < 1e-13);
    CHECK(rel(k.ai_prime, airy_ai_prime(x)) < 1e-13);
  }
  for (double x : {-12.0, -20.0}) {
    const AiryPair o = detail::airy_oscillatory(x);
    CHECK(std::abs(o.ai - airy_ai(x)) < 1e-13);
    CHECK(std::abs(o.ai_prime - airy_ai_prime(x)) < 1e-12);
  }
  // A Taylor step from the origin reproduces the series.
  const AiryPair start = airy(0.0);
  const AiryPair stepped = detail::airy_taylor_step(0.0, start, 0.7);
  CHECK(std::abs(stepped.ai - maclaurin(0.7).ai) < 1e-14);
  CHECK(std::abs(stepped.ai_prime - maclaurin(0.7).ai_prime) < 1e-14);
}

TEST_CASE("airy zeros") {
  CHECK(airy_zero(1) == doctest::Approx(2.338107410459767).epsilon(1e-15));
  CHECK(airy_prime_zero(1) == doctest::Approx(1.018792971647471).epsilon(1e-15));
  CHECK(std::abs(airy_ai(-2.338107410459767)) < 1e-12);
  CHECK(std::abs(airy_ai_prime(-1.018792971647471)) < 1e-12);

  for (int n = 1; n <= 30; ++n) {
    CAPTURE(n);
    CHECK(airy_zero(n) == doctest::Approx(oracle::airy_zeros[n - 1]).epsilon(1e-14));
    CHECK(airy_prime_zero(n) == doctest::Approx(oracle::airy_prime_zeros[n - 1]).epsilon(1e-14));
    CHECK(std::abs(airy_ai(-airy_zero(n))) < 1e-12);
    CHECK(std::abs(airy_ai_prime(-airy_prime_zero(n))) < 1e-12);
  }

  const double asymptotic = std::pow(3.0 * M_PI * (4 * 50 - 1) / 8.0, 2.0 / 3.0);
  CHECK(rel(airy_zero(50), asymptotic) < 1e-3);

  CHECK_THROWS_AS(airy_zero(0), InvalidSpec);
  CHECK_THROWS_AS(airy_prime_zero(-2), InvalidSpec);
}

TEST_CASE("airy zero table is ordered and interlaced") {
  const AiryZeroTable t = airy_zero_table(30);
  REQUIRE(t.ai_zeros.size() == 30);
  REQUIRE(t.aiprime_zeros.size() == 30);
  for (int i = 0; i < 30; ++i) {
    CHECK(t.aiprime_zeros[i] < t.ai_zeros[i]);
    if (i + 1 < 30) {
      CHECK(t.ai_zeros[i] < t.ai_zeros[i + 1]);
      CHECK(t.aiprime_zeros[i] < t.aiprime_zeros[i + 1]);
      CHECK(t.ai_zeros[i] < t.aiprime_zeros[i + 1]);
    }
  }
}
