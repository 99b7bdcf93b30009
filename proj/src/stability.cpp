#include "ewa/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ewa/dynamics.hpp"
#include "ewa/equilibrium.hpp"

namespace ewa {

std::string_view to_string(LocalClass c) {
  switch (c) {
    case LocalClass::attracting: return "attracting";
    case LocalClass::repelling: return "repelling";
    case LocalClass::neutral: return "neutral";
  }
  return "neutral";
}

std::string_view to_string(RegimeLabel r) {
  switch (r) {
    case RegimeLabel::period2: return "period2";
    case RegimeLabel::chaos: return "chaos";
    case RegimeLabel::boundary: return "boundary";
  }
  return "boundary";
}

LocalClass classify_multiplier(double m, double tol) {
  const double mag = std::abs(m);
  if (mag < 1.0 - tol) return LocalClass::attracting;
  if (mag > 1.0 + tol) return LocalClass::repelling;
  return LocalClass::neutral;
}

StabilityReport classify(const Params& p) {
  StabilityReport r;
  r.xbar = solve_fixed_point(p).xbar;
  r.multiplier = 1.0 - p.sigma - p.a * r.xbar * (1.0 - r.xbar);
  r.local = classify_multiplier(r.multiplier);
  return r;
}

double threshold_a0(double b, double sigma) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("threshold_a0: b must lie in (0,1)");
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("threshold_a0: sigma must lie in [0,1]");

  // f'(xbar) + 1 is strictly decreasing in a; positive at lo, negative at hi.
  const auto excess = [&](double a) {
    const double x = solve_fixed_point({a, b, sigma}).xbar;
    return 2.0 - sigma - a * x * (1.0 - x);
  };
  double lo = 1e-6;
  double hi = std::max(10.0 * (2.0 - sigma) / (b * (1.0 - b)), 100.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double boundary_onset(double sigma) { return 4.0 * (2.0 - sigma); }

BoundaryPoint boundary_point(double sigma, double a) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("boundary: sigma must lie in [0,1]");
  const double onset = boundary_onset(sigma);
  if (!(a >= onset)) {
    throw DomainError("boundary curves need a >= 4(2 - sigma)");
  }
  const double r = onset / a;
  const double sq = std::sqrt(std::max(0.0, 1.0 - r));
  BoundaryPoint pt;
  pt.a = a;
  pt.x1 = r / (2.0 * (1.0 + sq));
  pt.x2 = 0.5 * (1.0 + sq);
  pt.b1 = pt.x1 - (sigma / a) * log_odds_complement(pt.x1);
  pt.b2 = pt.x2 - (sigma / a) * log_odds_complement(pt.x2);
  return pt;
}

BifurcationBoundary boundary_curves(double sigma, std::span<const double> a_grid) {
  BifurcationBoundary out;
  out.sigma = sigma;
  out.points.reserve(a_grid.size());
  for (double a : a_grid) {
    out.points.push_back(boundary_point(sigma, a));
  }
  return out;
}

std::optional<double> universal_threshold_astar(double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("astar: sigma must lie in [0,1]");
  if (sigma == 0.0) return std::nullopt;

  // Solve g(x) = (1-x) log((1-x)/x) = (2-s)/s in the variable t = log((1-x)/x),
  // where g = t * logistic(t) is increasing and x = 1/(1+e^t) never underflows.
  const double target = (2.0 - sigma) / sigma;
  double lo = target;
  double hi = 2.0 * target + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mid * logistic(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  // 1 / (x (1 - x)) = 2 + 2 cosh(t)
  const double inv_var = 2.0 + 2.0 * std::cosh(t);
  return (2.0 - sigma) * inv_var;
}

RegimeLabel regime(double b, double sigma, double tol) {
  if (!(b > 0.0 && b < 1.0)) throw DomainError("regime: b must lie in (0,1)");
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("regime: sigma must lie in [0,1]");
  const double lo = (1.0 - sigma) / (2.0 - sigma);
  const double hi = 1.0 / (2.0 - sigma);
  if (b > lo + tol && b < hi - tol) return RegimeLabel::period2;
  if (b < lo - tol || b > hi + tol) return RegimeLabel::chaos;
  return RegimeLabel::boundary;
}

}  // namespace ewa
