#pragma once

// Weight-based multiplicative-weights simulator with discounting. Only used
// to cross-check the closed-form map: the dynamics depend on N and eps only
// through a = N log(1/(1-eps)).

#include <vector>

#include "ewa/params.hpp"

namespace ewa {

struct MwuConfig {
  double N = 1.0;      ///< total flow mass
  double eps = 0.5;    ///< learning rate in (0,1)
  double alpha = 0.5;  ///< slope of the resource-1 cost
  double beta = 0.5;   ///< slope of the resource-2 cost; alpha + beta = 1
  double sigma = 0.0;  ///< discount factor
};

void validate(const MwuConfig& cfg);

/// (a, b, sigma) = (N log(1/(1-eps)), beta, sigma).
[[nodiscard]] Params derived_params(const MwuConfig& cfg);

/// c1(x) = alpha N x.
[[nodiscard]] double cost_resource1(const MwuConfig& cfg, double x);
/// c2(1-x) = beta N (1-x).
[[nodiscard]] double cost_resource2(const MwuConfig& cfg, double x);

/// Strategy weights kept as natural logs.
struct WeightPair {
  double log_w1 = 0.0;
  double log_w2 = 0.0;

  /// w1 = w2 = 1.
  static WeightPair unit() { return {}; }
  /// Weights (x, 1-x), so that mixture() == x.
  static WeightPair from_mixture(double x);

  /// w1 / (w1 + w2).
  [[nodiscard]] double mixture() const;
};

struct MwuState {
  WeightPair weights;
  double x = 0.5;
};

/// w_i <- w_i^(1-sigma) (1-eps)^{c_i(x)}, then renormalised so that the larger
/// log-weight is 0. Returns the new weights and the induced mixture.
[[nodiscard]] MwuState mwu_step(const MwuConfig& cfg, const WeightPair& w, double x);

/// Mixtures x_0, x_1, ..., x_steps produced by repeated mwu_step from w0.
[[nodiscard]] std::vector<double> mwu_trajectory(const MwuConfig& cfg, const WeightPair& w0,
                                                 int steps);

}  // namespace ewa
