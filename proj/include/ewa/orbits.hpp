#pragma once

// Orbit iteration, period detection and refinement, the period-2 trap
// construction and period-3 chaos certificates.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ewa/params.hpp"

namespace ewa {

struct OrbitTrace {
  Params params;
  double x0 = 0.2;
  std::int64_t transient = 0;
  std::vector<double> samples;     ///< post-transient states, each clamped
  std::int64_t clamp_events = 0;   ///< iterates that hit the state clamp
};

/// One map application followed by clamping into [kStateFloor, kStateCeil].
/// Sets `clamped` when the clamp changed the value.
[[nodiscard]] double advance(const Params& p, double x, bool& clamped);

/// Discards `transient` steps from x0, then records `samples` states.
[[nodiscard]] OrbitTrace iterate(const Params& p, double x0, std::int64_t transient,
                                 std::int64_t samples);

enum class CycleClass { attracting, repelling, neutral, undetected };

std::string_view to_string(CycleClass c);

struct PeriodReport {
  std::optional<int> period;
  std::vector<double> orbit;   ///< orbit[k] = f^k(orbit[0])
  double multiplier = 0.0;     ///< product of f' along the cycle
  CycleClass cls = CycleClass::undetected;
};

struct PeriodOptions {
  double x0 = 0.2;
  std::int64_t transient = 20000;
  int max_period = 8;
  /// 1e-13 rather than 1e-16: the latter is below the double spacing near 1.
  double tol = 1e-13;
  /// Try x0 in {0.2, 0.5 - 1e-3, 0.8} and keep the first detection.
  bool multi_seed = false;

  /// Closure tolerance 1e-16 instead of the default.
  static PeriodOptions strict() {
    PeriodOptions o;
    o.tol = 1e-16;
    return o;
  }
};

/// Smallest n <= max_period with |f^n(x) - x| < tol after the transient, then
/// refined with find_periodic_orbit. Undetected when no such n exists.
/// A hit that refines to a repelling cycle (an orbit stalled next to the fixed
/// endpoints) is discarded and the search resumes 1000 steps later, at most
/// 20 times.
[[nodiscard]] PeriodReport detect_period(const Params& p, const PeriodOptions& opts = {});

/// Newton on f^T(x) - x from `seed`. If the converged point has a smaller
/// period dividing T, that period is reported. Undetected on failure.
[[nodiscard]] PeriodReport find_periodic_orbit(const Params& p, int T, double seed);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

/// Trap intervals I_- and I_+ around the linear 2-cycle of the bounding maps
/// F_-(y) = (1-s) y + 1 - b and F_+(y) = (1-s) y - b.
struct TrapVerification {
  double phi_b = 0.0;    ///< (2-s) b - (1-s)
  double phi_1mb = 0.0;  ///< (2-s)(1-b) - (1-s)
  double x_minus = 0.0;
  double x_plus = 0.0;
  double K = 0.0;        ///< half-width, phi(b0) / (2 s (2-s)) with b0 = min(b, 1-b)
  Interval I_minus;
  Interval I_plus;
  Interval image_minus;  ///< F(I_-) by endpoint images
  Interval image_plus;   ///< F(I_+)
  /// max(|F_-(x_-) - x_+|, |F_+(x_+) - x_-|)
  double identity_residual = 0.0;
  bool derivative_bound_holds = false;  ///< 0 <= F' < 1-s on I_- and I_+
  bool inclusions_hold = false;         ///< F(I_-) in I_+ and F(I_+) in I_-
  bool sandwich_holds = false;          ///< F_+ < F < F_- at the endpoints
  bool refinement_holds = false;        ///< 1/(a y) corrections at the endpoints
};

/// Checks the period-2 trap. Throws DomainError if sigma is not in (0,1) or
/// min(b, 1-b) <= (1-s)/(2-s).
[[nodiscard]] TrapVerification verify_period2_trap(const Params& p);

/// First a on the grid at which both trap checks pass, if any.
[[nodiscard]] std::optional<double> smallest_trapping_intensity(double b, double sigma,
                                                                std::span<const double> a_grid);

/// Point x0 in (c_-, c_+) with F(x0) = c_- and the test F^3(x0) > c_+.
struct Period3Witness {
  bool found = false;
  bool passes = false;
  /// Computed for the mirrored game (b -> 1-b), valid through F_{1-b}(-y) = -F_b(y).
  bool mirrored = false;
  double x0 = 0.0;
  double F_x0 = 0.0;
  double F3_x0 = 0.0;
  double c_minus = 0.0;
  double c_plus = 0.0;
};

struct ChaosCertificate {
  bool hypothesis_met = false;
  bool period3_found = false;
  std::array<double, 3> period3_orbit{};  ///< conjugate coordinate
  double fixed_point_y = 0.0;
  Period3Witness witness;
  double entropy_lower_bound = 0.0;  ///< log((1+sqrt 5)/2) iff period3_found
};

/// log((1 + sqrt 5) / 2), the entropy forced by a period-3 orbit.
[[nodiscard]] double golden_entropy();

/// Requires a > 4(1-sigma) and sigma < 1 so that F has critical points.
[[nodiscard]] ChaosCertificate certify_chaos(const Params& p);

struct LyapunovEstimate {
  double exponent = 0.0;
  std::int64_t floored_terms = 0;  ///< terms with |f'| < 1e-14, floored at log(1e-14)
};

[[nodiscard]] LyapunovEstimate lyapunov_estimate(const Params& p, double x0,
                                                 std::int64_t transient, std::int64_t n);

}  // namespace ewa
