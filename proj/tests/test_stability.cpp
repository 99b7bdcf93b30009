#include <cmath>
#include <vector>

#include "doctest.h"
#include "ewa/equilibrium.hpp"
#include "ewa/stability.hpp"
#include "oracles.hpp"

using namespace ewa;
using doctest::Approx;

TEST_CASE("classify") {
  const auto r0 = classify({4.0, 0.5, 0.0});
  CHECK(r0.multiplier == Approx(0.0));
  CHECK(r0.local == LocalClass::attracting);

  const auto r1 = classify({8.0, 0.4, 0.0});
  CHECK(r1.multiplier == Approx(-0.92).epsilon(1e-12));
  CHECK(r1.local == LocalClass::attracting);

  const auto r2 = classify({9.0, 0.4, 0.0});
  CHECK(r2.multiplier == Approx(-1.16).epsilon(1e-12));
  CHECK(r2.local == LocalClass::repelling);
}

TEST_CASE("classify_multiplier band") {
  CHECK(classify_multiplier(-1.0) == LocalClass::neutral);
  CHECK(classify_multiplier(1.0 + 1e-12) == LocalClass::neutral);
  CHECK(classify_multiplier(-1.0 + 1e-6) == LocalClass::attracting);
  CHECK(classify_multiplier(-1.0 - 1e-6) == LocalClass::repelling);
  CHECK(to_string(LocalClass::neutral) == "neutral");
}

TEST_CASE("threshold_a0 closed forms") {
  CHECK(threshold_a0(0.5, 0.0) == Approx(8.0).epsilon(1e-12));
  CHECK(std::abs(threshold_a0(0.4, 0.0) - 2.0 / (0.4 * 0.6)) < 1e-9);
  CHECK(threshold_a0(0.5, 0.5) == Approx(6.0).epsilon(1e-12));
  for (double s : {0.0, 0.25, 0.5, 0.75}) {
    CHECK(std::abs(threshold_a0(0.5, s) - 4.0 * (2.0 - s)) < 1e-9);
  }
  CHECK_THROWS_AS((void)threshold_a0(0.0, 0.2), DomainError);
  CHECK_THROWS_AS((void)threshold_a0(0.5, 1.2), DomainError);
}

TEST_CASE("threshold_a0 is a neutral point of classify") {
  oracle::Sampler rng(41);
  for (int i = 0; i < 200; ++i) {
    const double b = rng.uniform(0.02, 0.98);
    const double s = rng.uniform(0.0, 0.99);
    const double a0 = threshold_a0(b, s);
    const auto r = classify({a0, b, s});
    CHECK(r.multiplier == Approx(-1.0).epsilon(1e-9));
    CHECK(classify({a0 * 0.99, b, s}).local == LocalClass::attracting);
    CHECK(classify({a0 * 1.01, b, s}).local == LocalClass::repelling);
  }
}

TEST_CASE("threshold_a0 decreases in sigma") {
  for (double b : {0.3, 0.4, 0.5}) {
    double prev = threshold_a0(b, 0.0);
    for (int k = 1; k < 10; ++k) {
      const double cur = threshold_a0(b, k / 10.0);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("boundary curves") {
  for (double s : {0.0, 0.5, 0.9}) {
    const auto pt = boundary_point(s, boundary_onset(s));
    CHECK(pt.b1 == Approx(0.5).epsilon(1e-12));
    CHECK(pt.b2 == Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS((void)boundary_point(s, boundary_onset(s) * 0.999), DomainError);
  }
  const auto pt = boundary_point(0.5, 20.0);
  CHECK(pt.x1 + pt.x2 == Approx(1.0));
  CHECK(pt.b1 + pt.b2 == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(threshold_a0(pt.b1, 0.5) - 20.0) < 1e-6);
  CHECK(std::abs(threshold_a0(pt.b2, 0.5) - 20.0) < 1e-6);
  CHECK(solve_fixed_point({20.0, pt.b1, 0.5}).xbar == Approx(pt.x1).epsilon(1e-10));

  const std::vector<double> grid{8.0, 50.0, 1e3, 1e5, 1e8};
  const auto bb = boundary_curves(0.0, grid);
  REQUIRE(bb.points.size() == grid.size());
  for (std::size_t i = 1; i < bb.points.size(); ++i) {
    CHECK(bb.points[i].b1 < bb.points[i - 1].b1);
    CHECK(bb.points[i].b2 > bb.points[i - 1].b2);
  }
  for (const auto& p : bb.points) {
    CHECK(p.b1 > 0.0);
    CHECK(p.b2 < 1.0);
  }
}

TEST_CASE("round-trip over random boundary samples") {
  oracle::Sampler rng(42);
  for (int i = 0; i < 200; ++i) {
    const double s = rng.uniform(0.0, 0.95);
    const double a = boundary_onset(s) * rng.uniform(1.01, 20.0);
    const auto pt = boundary_point(s, a);
    CHECK(pt.b2 == Approx(1.0 - pt.b1).epsilon(1e-12));
    if (pt.b1 <= 0.0) continue;  // lower branch has left the unit interval
    CHECK(std::abs(threshold_a0(pt.b1, s) - a) < 1e-6 * a);
  }
}

TEST_CASE("universal threshold") {
  CHECK_FALSE(universal_threshold_astar(0.0).has_value());
  // memoryless case: (1-x) log((1-x)/x) = 1, a* = 1/(x(1-x))
  const auto g = [](oracle::real x) { return (1 - x) * std::log((1 - x) / x) - 1; };
  const oracle::real x = oracle::bisect(g, 1e-6L, 0.5L, 1e-18L);
  const double want = static_cast<double>(1 / (x * (1 - x)));
  const auto got = universal_threshold_astar(1.0);
  REQUIRE(got.has_value());
  CHECK(*got == Approx(want).epsilon(1e-10));

  // beyond a*, every b gives a repelling equilibrium
  for (double s : {0.3, 0.7, 1.0}) {
    const double astar = *universal_threshold_astar(s);
    for (double b : {0.01, 0.1, 0.3, 0.5, 0.9, 0.99}) {
      CHECK(threshold_a0(b, s) <= astar * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("regime labels") {
  CHECK(regime(0.5, 0.0) == RegimeLabel::boundary);
  CHECK(regime(0.4, 0.5) == RegimeLabel::period2);
  CHECK(regime(0.2, 0.5) == RegimeLabel::chaos);
  CHECK(regime(0.8, 0.5) == RegimeLabel::chaos);
  CHECK(regime(1.0 / 3.0, 0.5) == RegimeLabel::boundary);
  CHECK(regime(0.01, 1.0) == RegimeLabel::period2);
  CHECK(to_string(RegimeLabel::chaos) == "chaos");
}
