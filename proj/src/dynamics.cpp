#include "ewa/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ewa {

void validate(const Params& p) {
  if (!(p.a > 0.0) || !std::isfinite(p.a)) {
    throw DomainError("intensity of choice a must be positive and finite, got " + describe(p));
  }
  if (!(p.b > 0.0 && p.b < 1.0)) {
    throw DomainError("equilibrium split b must lie in (0,1), got " + describe(p));
  }
  if (!(p.sigma >= 0.0 && p.sigma <= 1.0)) {
    throw DomainError("discount factor sigma must lie in [0,1], got " + describe(p));
  }
}

std::string describe(const Params& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(a=" << p.a << ", b=" << p.b << ", sigma=" << p.sigma << ")";
  return os.str();
}

double clamp_state(double x) { return std::clamp(x, kStateFloor, kStateCeil); }

double logistic(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double log_odds_complement(double x) { return std::log1p(-x) - std::log(x); }

namespace {

// Exponent u with f(x) = 1 / (1 + e^u).
double map_exponent(const Params& p, double x) {
  if (p.sigma >= 1.0) {
    return p.a * (x - p.b);
  }
  const double xc = clamp_state(x);
  return (1.0 - p.sigma) * log_odds_complement(xc) + p.a * (xc - p.b);
}

// e^{-|z|} / (1 + e^{-|z|})^2, i.e. p (1 - p) for p = logistic(z).
double logistic_variance(double z) {
  const double e = std::exp(-std::abs(z));
  const double d = 1.0 + e;
  return e / (d * d);
}

}  // namespace

double step_x(const Params& p, double x) {
  if (p.sigma < 1.0) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
  }
  return logistic(-map_exponent(p, x));
}

double deriv_x(const Params& p, double x) {
  if (p.sigma < 1.0 && (x <= 0.0 || x >= 1.0)) {
    throw DomainError("f' is infinite at the boundary fixed points for sigma < 1");
  }
  const double u = map_exponent(p, x);
  const double f = logistic(-u);
  const double one_minus_f = logistic(u);
  double bracket = -p.a;
  if (p.sigma < 1.0) {
    const double xc = clamp_state(x);
    bracket += (1.0 - p.sigma) / (xc * (1.0 - xc));
  }
  return f * one_minus_f * bracket;
}

std::optional<std::pair<double, double>> critical_points_x(const Params& p) {
  if (p.sigma >= 1.0 || p.a <= 4.0 * (1.0 - p.sigma)) {
    return std::nullopt;
  }
  const double r = 4.0 * (1.0 - p.sigma) / p.a;
  const double sq = std::sqrt(1.0 - r);
  // (1 - sq)/2 without cancellation.
  const double left = r / (2.0 * (1.0 + sq));
  return std::pair{left, 0.5 * (1.0 + sq)};
}

double step_y(const Params& p, double y) {
  return (1.0 - p.sigma) * y + logistic(-p.a * y) - p.b;
}

ConjugateDerivs derivs_y(const Params& p, double y) {
  const double z = p.a * y;
  const double w = logistic_variance(z);
  const double a2 = p.a * p.a;
  ConjugateDerivs d;
  d.d1 = (1.0 - p.sigma) - p.a * w;
  d.d2 = a2 * w * std::tanh(0.5 * z);
  d.d3 = a2 * p.a * w * (6.0 * w - 1.0);
  return d;
}

double slope_deficit_y(const Params& p, double y) { return p.a * logistic_variance(p.a * y); }

double schwarzian_y(const Params& p, double y) {
  const double w = logistic_variance(p.a * y);
  const double d1 = (1.0 - p.sigma) - p.a * w;
  if (d1 == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  // 2F'F''' - 3F''^2 = a^3 w (2(1-s)(6w-1) - a w)
  const double bracket = 2.0 * (1.0 - p.sigma) * (6.0 * w - 1.0) - p.a * w;
  const double numer = p.a * p.a * p.a * w * bracket;
  return numer / (2.0 * d1 * d1);
}

std::optional<std::pair<double, double>> critical_points_y(const Params& p) {
  if (p.sigma >= 1.0 || p.a <= 4.0 * (1.0 - p.sigma)) {
    return std::nullopt;
  }
  const double sq = std::sqrt(1.0 - 4.0 * (1.0 - p.sigma) / p.a);
  const double c = 2.0 * std::atanh(sq) / p.a;
  return std::pair{-c, c};
}

double to_conjugate(const Params& p, double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("conjugate coordinate undefined outside (0,1)");
  }
  return log_odds_complement(x) / p.a;
}

double from_conjugate(const Params& p, double y) { return logistic(-p.a * y); }

double potential(const Params& p, double x) {
  const double u = 1.0 - x;
  return 0.5 * p.a * p.a * ((1.0 - p.b) * x * x + p.b * u * u);
}

double potential_slope(const Params& p, double x) { return p.a * p.a * (x - p.b); }

}  // namespace ewa
