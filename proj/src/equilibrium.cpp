#include "ewa/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "ewa/dynamics.hpp"

namespace ewa {

namespace {

constexpr double kBracketPad = 1e-9;
constexpr int kMaxBisections = 200;

double fixed_point_residual(const Params& p, double x) {
  return x - p.b - (p.sigma / p.a) * log_odds_complement(x);
}

}  // namespace

EquilibriumResult solve_fixed_point(const Params& p) {
  validate(p);
  double lo = std::max(std::min(p.b, 0.5) - kBracketPad, kStateFloor);
  double hi = std::min(std::max(p.b, 0.5) + kBracketPad, kStateCeil);

  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (fixed_point_residual(p, mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double rlo = std::abs(fixed_point_residual(p, lo));
  const double rhi = std::abs(fixed_point_residual(p, hi));
  EquilibriumResult out;
  out.xbar = rlo <= rhi ? lo : hi;
  out.bracket = hi - lo;
  out.residual = std::abs(step_x(p, out.xbar) - out.xbar);
  return out;
}

std::vector<double> equilibrium_limits(double b, double sigma, std::span<const double> a_grid) {
  std::vector<double> out;
  out.reserve(a_grid.size());
  for (double a : a_grid) {
    out.push_back(solve_fixed_point({a, b, sigma}).xbar);
  }
  return out;
}

}  // namespace ewa
