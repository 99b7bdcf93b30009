#include <cmath>

#include "doctest.h"
#include "ewa/dynamics.hpp"
#include "ewa/mwu.hpp"
#include "oracles.hpp"

using namespace ewa;
using doctest::Approx;

TEST_CASE("step_x: symmetric game keeps 1/2 fixed") {
  for (double a : {0.1, 1.0, 8.0, 35.0, 500.0}) {
    CHECK(step_x({a, 0.5, 0.0}, 0.5) == 0.5);
  }
}

TEST_CASE("step_x: boundary points are fixed for sigma < 1") {
  for (double s : {0.0, 0.3, 0.999}) {
    const Params p{20.0, 0.3, s};
    CHECK(step_x(p, 0.0) == 0.0);
    CHECK(step_x(p, 1.0) == 1.0);
  }
  // memoryless logit map moves the boundary
  const Params logit{20.0, 0.3, 1.0};
  CHECK(step_x(logit, 0.0) > 0.0);
  CHECK(step_x(logit, 1.0) < 1.0);
}

TEST_CASE("step_x: no overflow for huge intensities") {
  for (double a : {1e3, 1e4, 1e6}) {
    for (double x : {1e-12, 0.1, 0.39, 0.41, 0.9, 1.0 - 1e-12}) {
      const double y = step_x({a, 0.4, 0.0}, x);
      CHECK(std::isfinite(y));
      CHECK(y >= 0.0);
      CHECK(y <= 1.0);
    }
  }
}

TEST_CASE("step_x agrees with the literal map") {
  oracle::Sampler rng(11);
  for (int i = 0; i < 500; ++i) {
    const double a = rng.uniform(0.1, 60.0);
    const double b = rng.uniform(0.01, 0.99);
    const double s = rng.uniform(0.0, 1.0);
    const double x = rng.uniform(0.001, 0.999);
    const double want = static_cast<double>(oracle::direct_map(a, b, s, x));
    CHECK(step_x({a, b, s}, x) == Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("step_x: mirror identity f_{1-b}(1-x) = 1 - f_b(x)") {
  oracle::Sampler rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Params p{rng.uniform(0.1, 500.0), rng.uniform(0.01, 0.99), rng.uniform(0.0, 1.0)};
    const double x = rng.uniform(0.0, 1.0);
    const double lhs = step_x(p.mirrored(), 1.0 - x);
    CHECK(std::abs(lhs - (1.0 - step_x(p, x))) < 1e-12);
  }
}

TEST_CASE("step_x: ordering in the discount factor") {
  // intensities kept moderate so that both images stay resolvable in double
  oracle::Sampler rng(13);
  for (int i = 0; i < 500; ++i) {
    const double a = rng.uniform(0.1, 20.0);
    const double b = rng.uniform(0.2, 0.8);
    double s1 = rng.uniform(0.0, 1.0);
    double s2 = rng.uniform(0.0, 1.0);
    if (s1 > s2) std::swap(s1, s2);
    if (s2 - s1 < 1e-3) continue;
    const double xl = rng.uniform(0.01, 0.49);
    const double xr = rng.uniform(0.51, 0.99);
    CHECK(step_x({a, b, s1}, xl) < step_x({a, b, s2}, xl));
    CHECK(step_x({a, b, s1}, xr) > step_x({a, b, s2}, xr));
    CHECK(step_x({a, b, s1}, 0.5) == step_x({a, b, s2}, 0.5));
  }
}

TEST_CASE("step_x matches the weight simulator step by step") {
  // a = N log(1/(1-eps)) = 10 with eps = 1 - e^{-1}
  const MwuConfig cfg{10.0, 1.0 - std::exp(-1.0), 0.6, 0.4, 0.25};
  const Params p = derived_params(cfg);
  CHECK(p.a == Approx(10.0).epsilon(1e-15));
  double x = 0.3;
  MwuState s{WeightPair::from_mixture(0.3), 0.3};
  for (int n = 0; n < 20; ++n) {
    x = step_x(p, x);
    s = mwu_step(cfg, s.weights, s.x);
    CHECK(s.x == Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("deriv_x: closed-form values") {
  CHECK(deriv_x({4.0, 0.5, 0.0}, 0.5) == Approx(0.0));
  CHECK(deriv_x({8.0, 0.5, 1.0}, 0.5) == Approx(-2.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)deriv_x({8.0, 0.5, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS((void)deriv_x({8.0, 0.5, 0.5}, 1.0), DomainError);
  CHECK(std::isfinite(deriv_x({8.0, 0.5, 1.0}, 0.0)));
}

TEST_CASE("deriv_x matches a central difference of the literal map") {
  const auto check = [](double a, double b, double s, double x) {
    const auto f = [&](oracle::real t) { return oracle::direct_map(a, b, s, t); };
    const double fd = static_cast<double>(oracle::central_difference(f, x, 1e-6L));
    const double d = deriv_x({a, b, s}, x);
    CHECK(std::abs(d - fd) <= 1e-5 * std::max(std::abs(fd), 1.0));
  };
  check(10.0, 0.4, 0.25, 0.3);
  oracle::Sampler rng(14);
  for (int i = 0; i < 1000; ++i) {
    check(rng.uniform(0.1, 60.0), rng.uniform(0.01, 0.99), rng.uniform(0.0, 1.0),
          rng.uniform(0.01, 0.99));
  }
}

TEST_CASE("critical_points_x") {
  CHECK_FALSE(critical_points_x({4.0, 0.3, 0.0}).has_value());
  CHECK_FALSE(critical_points_x({2.0, 0.3, 0.5}).has_value());
  CHECK_FALSE(critical_points_x({50.0, 0.3, 1.0}).has_value());

  const auto c = critical_points_x({8.0, 0.7, 0.0});
  REQUIRE(c.has_value());
  CHECK(c->first == Approx((1.0 - std::sqrt(0.5)) / 2.0).epsilon(1e-15));
  CHECK(c->second == Approx((1.0 + std::sqrt(0.5)) / 2.0).epsilon(1e-15));

  // sign-scan oracle on f' for (a=16, sigma=0.5)
  const double a = 16.0;
  const double s = 0.5;
  for (double b : {0.2, 0.5, 0.9}) {
    const Params p{a, b, s};
    const auto roots = oracle::scan_roots(
        [&](oracle::real x) {
          const oracle::real fx = oracle::direct_map(a, b, s, x);
          return fx * (1 - fx) * ((1 - s) / (x * (1 - x)) - a);
        },
        1e-6L, 1 - 1e-6L, 20000);
    REQUIRE(roots.size() == 2);
    const auto cp = critical_points_x(p);
    REQUIRE(cp.has_value());
    CHECK(cp->first == Approx(static_cast<double>(roots[0])).epsilon(1e-12));
    CHECK(cp->second == Approx(static_cast<double>(roots[1])).epsilon(1e-12));
    CHECK(std::abs(deriv_x(p, cp->first)) < 1e-9);
    CHECK(std::abs(deriv_x(p, cp->second)) < 1e-9);
  }
}

TEST_CASE("step_y: closed form") {
  for (double a : {0.5, 5.0, 50.0}) {
    CHECK(step_y({a, 0.5, 1.0}, 0.0) == 0.0);
  }
  oracle::Sampler rng(15);
  for (int i = 0; i < 300; ++i) {
    const double a = rng.uniform(0.1, 50.0);
    const double b = rng.uniform(0.01, 0.99);
    const double s = rng.uniform(0.0, 1.0);
    const double y = rng.uniform(-2.0, 2.0);
    const double want = static_cast<double>(oracle::direct_conjugate(a, b, s, y));
    CHECK(step_y({a, b, s}, y) == Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("derivs_y match finite differences of step_y") {
  const double a = 20.0;
  const double b = 0.4;
  const double s = 0.25;
  const double y = 0.3;
  const oracle::real h = 1e-5L;
  const auto F = [&](oracle::real t) { return oracle::direct_conjugate(a, b, s, t); };
  const auto dF = [&](oracle::real t) { return oracle::central_difference(F, t, h); };
  const auto ddF = [&](oracle::real t) { return oracle::central_difference(dF, t, h); };
  const ConjugateDerivs d = derivs_y({a, b, s}, y);
  CHECK(d.d1 == Approx(static_cast<double>(dF(y))).epsilon(1e-6));
  CHECK(d.d2 == Approx(static_cast<double>(ddF(y))).epsilon(1e-5));
  // third derivative as a difference of the closed-form second derivative
  const double d3_fd =
      (derivs_y({a, b, s}, y + 1e-5).d2 - derivs_y({a, b, s}, y - 1e-5).d2) / 2e-5;
  CHECK(d.d3 == Approx(d3_fd).epsilon(1e-5));
}

TEST_CASE("schwarzian_y is negative when F is bimodal") {
  const Params p{20.0, 0.4, 0.25};
  for (double y : {-1.0, -0.1, 0.0, 0.1, 1.0}) {
    CHECK(schwarzian_y(p, y) < 0.0);
  }
  oracle::Sampler rng(16);
  for (int i = 0; i < 200; ++i) {
    const double s = rng.uniform(0.0, 1.0);
    const double a = rng.uniform(4.0 * (1.0 - s) + 1e-6, 500.0);
    const Params q{a, rng.uniform(0.01, 0.99), s};
    for (int k = 0; k < 100; ++k) {
      const double y = rng.uniform(-1.0, 1.0);
      CHECK(schwarzian_y(q, y) < 0.0);
    }
  }
}

TEST_CASE("critical_points_y are the images of critical_points_x") {
  const Params p{30.0, 0.3, 0.4};
  const auto cx = critical_points_x(p);
  const auto cy = critical_points_y(p);
  REQUIRE(cx.has_value());
  REQUIRE(cy.has_value());
  CHECK(cy->first == Approx(to_conjugate(p, cx->second)).epsilon(1e-12));
  CHECK(cy->second == Approx(to_conjugate(p, cx->first)).epsilon(1e-12));
  CHECK(std::abs(derivs_y(p, cy->first).d1) < 1e-12);
  CHECK(std::abs(derivs_y(p, cy->second).d1) < 1e-12);
}

TEST_CASE("conjugacy") {
  CHECK(to_conjugate({3.0, 0.4, 0.0}, 0.5) == 0.0);
  CHECK(from_conjugate({10.0, 0.4, 0.0}, 0.0) == 0.5);
  CHECK_THROWS_AS((void)to_conjugate({3.0, 0.4, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS((void)to_conjugate({3.0, 0.4, 0.0}, 1.0), DomainError);

  const Params p{35.0, 0.4, 0.5};
  CHECK(std::abs(to_conjugate(p, step_x(p, 0.2)) - step_y(p, to_conjugate(p, 0.2))) < 1e-9);

  oracle::Sampler rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Params q{rng.uniform(0.1, 50.0), rng.uniform(0.01, 0.99), rng.uniform(0.0, 1.0)};
    const double x = rng.uniform(1e-12, 1.0 - 1e-12);
    CHECK(from_conjugate(q, to_conjugate(q, x)) == Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("potential") {
  const Params sym{7.0, 0.5, 0.0};
  oracle::Sampler rng(18);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(0.0, 1.0);
    CHECK(potential(sym, x) == Approx(potential(sym, 1.0 - x)).epsilon(1e-14));
  }

  const Params p{35.0, 0.4, 0.0};
  double best_x = 0.0;
  double best = potential(p, 0.0);
  for (int i = 1; i <= 1000000; ++i) {
    const double x = i * 1e-6;
    const double v = potential(p, x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  CHECK(std::abs(best_x - 0.4) <= 1e-6);

  // slope from finite differences changes sign exactly once, at b
  int changes = 0;
  double prev = potential(p, 1e-3) - potential(p, 0.0);
  double where = -1.0;
  for (int i = 1; i < 1000; ++i) {
    const double x0 = i * 1e-3;
    const double slope = potential(p, x0 + 1e-3) - potential(p, x0);
    if ((slope > 0.0) != (prev > 0.0)) {
      ++changes;
      where = x0;
    }
    prev = slope;
  }
  CHECK(changes == 1);
  CHECK(std::abs(where - 0.4) <= 1e-3);
  CHECK(potential_slope(p, 0.4) == Approx(0.0));
}
