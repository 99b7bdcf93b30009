#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ewa/params.hpp"

namespace ewa {

enum class LocalClass { attracting, repelling, neutral };

std::string_view to_string(LocalClass c);

/// Band around |multiplier| = 1 reported as neutral.
inline constexpr double kNeutralBand = 1e-9;

/// attracting iff |m| < 1 - tol, repelling iff |m| > 1 + tol.
[[nodiscard]] LocalClass classify_multiplier(double m, double tol = kNeutralBand);

struct StabilityReport {
  double xbar = 0.5;
  double multiplier = 0.0;  ///< f'(xbar) = 1 - sigma - a xbar (1 - xbar)
  LocalClass local = LocalClass::attracting;
};

[[nodiscard]] StabilityReport classify(const Params& p);

/// Intensity a0 at which f'(xbar) crosses -1 for fixed (b, sigma).
[[nodiscard]] double threshold_a0(double b, double sigma);

/// One sample of the flip-bifurcation boundary.
struct BoundaryPoint {
  double a = 0.0;
  double x1 = 0.5;  ///< fixed point with multiplier -1, in (0, 1/2]
  double x2 = 0.5;  ///< 1 - x1
  double b1 = 0.5;  ///< lower branch of the stability boundary
  double b2 = 0.5;  ///< upper branch
};

struct BifurcationBoundary {
  double sigma = 0.0;
  std::vector<BoundaryPoint> points;
};

/// Smallest intensity for which the boundary exists, 4(2 - sigma).
[[nodiscard]] double boundary_onset(double sigma);

/// Throws DomainError for a < 4(2 - sigma).
[[nodiscard]] BoundaryPoint boundary_point(double sigma, double a);

[[nodiscard]] BifurcationBoundary boundary_curves(double sigma, std::span<const double> a_grid);

/// Intensity beyond which xbar is repelling for every b. None at sigma = 0.
/// May be +inf when sigma is so small that the threshold overflows.
[[nodiscard]] std::optional<double> universal_threshold_astar(double sigma);

enum class RegimeLabel { period2, chaos, boundary };

std::string_view to_string(RegimeLabel r);

/// Large-a behaviour: period2 inside ((1-s)/(2-s), 1/(2-s)), chaos outside.
[[nodiscard]] RegimeLabel regime(double b, double sigma, double tol = 1e-9);

}  // namespace ewa
