#pragma once

#include <span>
#include <vector>

#include "ewa/params.hpp"

namespace ewa {

/// Interior (perturbed) equilibrium of the map.
struct EquilibriumResult {
  double xbar = 0.5;
  double residual = 0.0;  ///< |f(xbar) - xbar|
  double bracket = 0.0;   ///< width of the final bisection interval
};

/// Unique interior fixed point, the root of x - b - (sigma/a) log((1-x)/x).
///
/// The residual is strictly increasing, and the root lies between b and 1/2,
/// so plain bisection on [min(b,1/2) - 1e-9, max(b,1/2) + 1e-9] always
/// converges. At sigma = 0 the root is b itself.
[[nodiscard]] EquilibriumResult solve_fixed_point(const Params& p);

/// xbar(a) along an ascending grid of intensities.
[[nodiscard]] std::vector<double> equilibrium_limits(double b, double sigma,
                                                     std::span<const double> a_grid);

}  // namespace ewa
