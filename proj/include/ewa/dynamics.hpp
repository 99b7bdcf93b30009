#pragma once

// Evaluation of the EWA map f(x) on [0,1], its conjugate F(y) on the real
// line, their derivatives and the congestion-game potential.
//
// Every function here is pure and safe to call from any thread.

#include <optional>
#include <utility>

#include "ewa/params.hpp"

namespace ewa {

/// Lower clamp applied to iterates before the log-ratio is taken.
inline constexpr double kStateFloor = 1e-300;
/// Upper clamp; rounds to the largest double below 1.
inline constexpr double kStateCeil = 1.0 - 1e-16;

/// Clamps x into [kStateFloor, kStateCeil].
[[nodiscard]] double clamp_state(double x);

/// Numerically stable 1 / (1 + exp(-z)).
[[nodiscard]] double logistic(double z);

/// log((1 - x) / x) for x in (0,1).
[[nodiscard]] double log_odds_complement(double x);

/// f(x) = x^(1-s) / (x^(1-s) + (1-x)^(1-s) exp(a(x-b))).
///
/// Evaluated as 1 / (1 + exp(u)) with u = (1-s) log((1-x)/x) + a(x-b), so no
/// intermediate overflows. For sigma < 1 the boundary points 0 and 1 are
/// returned unchanged.
[[nodiscard]] double step_x(const Params& p, double x);

/// f'(x) = f (1-f) ((1-s)/(x(1-x)) - a). Throws DomainError at x in {0,1}
/// when sigma < 1, where the derivative is infinite.
[[nodiscard]] double deriv_x(const Params& p, double x);

/// Turning points (c_l, c_r) of f, present iff a > 4(1-sigma) and sigma < 1.
[[nodiscard]] std::optional<std::pair<double, double>> critical_points_x(const Params& p);

// Conjugate coordinate y = (1/a) log((1-x)/x).

/// F(y) = (1-s) y + 1/(exp(a y) + 1) - b.
[[nodiscard]] double step_y(const Params& p, double y);

struct ConjugateDerivs {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// (F', F'', F''') in the overflow-free logistic form.
[[nodiscard]] ConjugateDerivs derivs_y(const Params& p, double y);

/// a * e^{ay} / (1 + e^{ay})^2 = (1 - sigma) - F'(y). Always >= 0.
[[nodiscard]] double slope_deficit_y(const Params& p, double y);

/// SF = F'''/F' - 3/2 (F''/F')^2. Returns -inf at critical points.
[[nodiscard]] double schwarzian_y(const Params& p, double y);

/// Critical points (c_-, c_+) of F; the images of those of f.
[[nodiscard]] std::optional<std::pair<double, double>> critical_points_y(const Params& p);

/// y = (1/a) log((1-x)/x). Throws DomainError unless 0 < x < 1.
[[nodiscard]] double to_conjugate(const Params& p, double x);

/// x = 1 / (1 + exp(a y)).
[[nodiscard]] double from_conjugate(const Params& p, double y);

/// Phi(x) = (a^2/2) ((1-b) x^2 + b (1-x)^2); minimised at x = b.
[[nodiscard]] double potential(const Params& p, double x);

/// dPhi/dx = a^2 (x - b).
[[nodiscard]] double potential_slope(const Params& p, double x);

}  // namespace ewa
