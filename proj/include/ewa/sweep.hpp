#pragma once

// Parameter sweeps behind the bifurcation, period, regime and cobweb
// diagrams. Cells are independent tasks; results land in a pre-sized
// row-major buffer so the output never depends on the worker count.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ewa/orbits.hpp"
#include "ewa/params.hpp"
#include "ewa/stability.hpp"

namespace ewa {

/// Evenly spaced values min..max (inclusive) with `steps` points.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  [[nodiscard]] double value(int i) const;
};

struct SweepMeta {
  double sigma = 0.0;
  double b = 0.0;  ///< only meaningful for bifurcation diagrams
  double x0 = 0.2;
  std::int64_t transient = 20000;
  double tol = 0.0;
  int max_period = 0;
};

template <typename Payload>
struct Cell {
  std::vector<double> coords;  ///< one value per axis, in axis order
  Payload payload{};
};

/// Cells in row-major order: the last axis varies fastest.
template <typename Payload>
struct DiagramGrid {
  std::vector<Axis> axes;
  std::vector<Cell<Payload>> cells;
  SweepMeta meta;
};

struct BifurcationColumn {
  std::vector<double> samples;
  std::int64_t clamp_events = 0;
};

struct PeriodCell {
  bool valid = true;  ///< false when b is not in (0,1)
  int period = 0;     ///< 1..max_period, 0 when undetected
};

struct RegimeCell {
  bool valid = true;
  RegimeLabel label = RegimeLabel::boundary;
};

/// 0 selects std::thread::hardware_concurrency().
[[nodiscard]] unsigned resolve_threads(unsigned requested);

/// Runs fn(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

struct BifurcationOptions {
  double x0 = 0.2;
  std::int64_t transient = 20000;
  unsigned threads = 0;
};

[[nodiscard]] DiagramGrid<BifurcationColumn> bifurcation_diagram(double b, double sigma,
                                                                 double a_min, double a_max,
                                                                 int a_steps, int samples_per_a,
                                                                 const BifurcationOptions& opts = {});

/// detect_period on every (a, b) cell. Axes are (a, b).
[[nodiscard]] DiagramGrid<PeriodCell> period_diagram(double sigma, const Axis& a_axis,
                                                     const Axis& b_axis,
                                                     const PeriodOptions& opts = {},
                                                     unsigned threads = 0);

/// Analytic regime labels on a (sigma, b) grid; no iteration.
[[nodiscard]] DiagramGrid<RegimeCell> regime_map(const Axis& sigma_axis, const Axis& b_axis);

struct CobwebSegment {
  int index = 0;
  std::array<double, 2> from{};
  std::array<double, 2> to{};
};

struct CobwebTrace {
  std::vector<CobwebSegment> segments;
  std::vector<std::array<double, 2>> potential;  ///< (x, Phi(x)) samples
};

/// Staircase (x_n,x_n) -> (x_n,x_{n+1}) -> (x_{n+1},x_{n+1}) for `steps`
/// iterations, plus the potential sampled at `potential_points` points.
[[nodiscard]] CobwebTrace cobweb_trace(const Params& p, double x0, int steps,
                                       int potential_points = 1000);

/// (x, Phi(x)) on an even grid over [0,1].
[[nodiscard]] std::vector<std::array<double, 2>> potential_curve(const Params& p, int points);

/// Comparison of a period diagram with the analytic stability region
/// a < 4(2-s) or b outside [b1(a), b2(a)].
struct FrontierCheck {
  std::int64_t cells = 0;
  std::int64_t disagreements = 0;  ///< measured period-1 status differs from analytic
  std::int64_t far_disagreements = 0;  ///< ... with no analytic frontier within one cell
};

[[nodiscard]] bool analytically_stable(double a, double b, double sigma);

[[nodiscard]] FrontierCheck check_period1_frontier(const DiagramGrid<PeriodCell>& grid);

}  // namespace ewa
