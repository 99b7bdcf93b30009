#include "ewa/mwu.hpp"

#include <algorithm>
#include <cmath>

#include "ewa/dynamics.hpp"

namespace ewa {

void validate(const MwuConfig& cfg) {
  if (!(cfg.N > 0.0) || !std::isfinite(cfg.N)) {
    throw DomainError("flow mass N must be positive");
  }
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) {
    throw DomainError("learning rate eps must lie in (0,1)");
  }
  if (!(cfg.alpha >= 0.0 && cfg.beta > 0.0 && cfg.beta < 1.0)) {
    throw DomainError("cost slopes must satisfy alpha >= 0 and beta in (0,1)");
  }
  if (std::abs(cfg.alpha + cfg.beta - 1.0) > 1e-12) {
    throw DomainError("cost slopes must be normalised, alpha + beta = 1");
  }
  if (!(cfg.sigma >= 0.0 && cfg.sigma <= 1.0)) {
    throw DomainError("discount factor sigma must lie in [0,1]");
  }
}

Params derived_params(const MwuConfig& cfg) {
  return {cfg.N * -std::log1p(-cfg.eps), cfg.beta, cfg.sigma};
}

double cost_resource1(const MwuConfig& cfg, double x) { return cfg.alpha * cfg.N * x; }

double cost_resource2(const MwuConfig& cfg, double x) { return cfg.beta * cfg.N * (1.0 - x); }

WeightPair WeightPair::from_mixture(double x) { return {std::log(x), std::log1p(-x)}; }

double WeightPair::mixture() const { return logistic(log_w1 - log_w2); }

MwuState mwu_step(const MwuConfig& cfg, const WeightPair& w, double x) {
  // log(1 - eps) < 0
  const double log_keep = std::log1p(-cfg.eps);
  const double keep = 1.0 - cfg.sigma;
  double l1 = keep * w.log_w1 + log_keep * cost_resource1(cfg, x);
  double l2 = keep * w.log_w2 + log_keep * cost_resource2(cfg, x);
  const double top = std::max(l1, l2);
  l1 -= top;
  l2 -= top;
  MwuState next{{l1, l2}, 0.0};
  next.x = next.weights.mixture();
  return next;
}

std::vector<double> mwu_trajectory(const MwuConfig& cfg, const WeightPair& w0, int steps) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(std::max(steps, 0)) + 1);
  MwuState s{w0, w0.mixture()};
  xs.push_back(s.x);
  for (int n = 0; n < steps; ++n) {
    s = mwu_step(cfg, s.weights, s.x);
    xs.push_back(s.x);
  }
  return xs;
}

}  // namespace ewa
