#pragma once

// Test-only reference computations. None of these share code with the
// library: they evaluate the literal formulas in long double and use
// brute-force root finding.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using real = long double;

/// x^(1-s) / (x^(1-s) + (1-x)^(1-s) exp(a(x-b))), literally.
inline real direct_map(real a, real b, real s, real x) {
  const real num = std::pow(x, 1 - s);
  return num / (num + std::pow(1 - x, 1 - s) * std::exp(a * (x - b)));
}

/// (1-s) y + 1/(e^{ay}+1) - b, literally.
inline real direct_conjugate(real a, real b, real s, real y) {
  return (1 - s) * y + 1 / (std::exp(a * y) + 1) - b;
}

/// Logit best response 1/(1 + exp(a(x-b))).
inline double logistic_response(double a, double b, double x) {
  return static_cast<double>(1 / (1 + std::exp(static_cast<real>(a) * (x - b))));
}

inline real central_difference(const std::function<real(real)>& f, real x, real h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

/// Sign-change bisection of g on [lo, hi], to the given bracket width.
inline real bisect(const std::function<real(real)>& g, real lo, real hi, real width = 1e-16L) {
  real glo = g(lo);
  while (hi - lo > width) {
    const real mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    const real gm = g(mid);
    if ((gm > 0) == (glo > 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

/// Interior fixed point from f(x) - x on the literal map.
inline real fixed_point(real a, real b, real s) {
  const real lo = std::min<real>(b, 0.5L) - 1e-9L;
  const real hi = std::max<real>(b, 0.5L) + 1e-9L;
  return bisect([&](real x) { return direct_map(a, b, s, x) - x; }, lo, hi, 1e-18L);
}

/// All roots of g on a uniform grid, located by sign change and bisection.
inline std::vector<real> scan_roots(const std::function<real(real)>& g, real lo, real hi, int n) {
  std::vector<real> roots;
  real prev = lo;
  real gprev = g(lo);
  for (int i = 1; i <= n; ++i) {
    const real x = lo + (hi - lo) * i / n;
    const real gx = g(x);
    if ((gprev > 0) != (gx > 0)) roots.push_back(bisect(g, prev, x, 1e-15L));
    prev = x;
    gprev = gx;
  }
  return roots;
}

/// Mixtures produced by the non-recursive discounted cumulative-cost weights
///   w_i(n+1) = (1-eps)^{sum_k (1-s)^{n-k} c_i(x_k)},  w(0) = (1,1).
inline std::vector<real> cumulative_weight_mixtures(real N, real eps, real alpha, real beta,
                                                    real s, int steps) {
  std::vector<real> xs{0.5L};
  for (int n = 0; n < steps; ++n) {
    real e1 = 0;
    real e2 = 0;
    for (int k = 0; k <= n; ++k) {
      const real disc = std::pow(1 - s, static_cast<real>(n - k));
      e1 += disc * alpha * N * xs[static_cast<std::size_t>(k)];
      e2 += disc * beta * N * (1 - xs[static_cast<std::size_t>(k)]);
    }
    const real w1 = std::pow(1 - eps, e1);
    const real w2 = std::pow(1 - eps, e2);
    xs.push_back(w1 / (w1 + w2));
  }
  return xs;
}

/// Deterministic uniform generator for property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
