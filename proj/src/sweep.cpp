#include "ewa/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "ewa/dynamics.hpp"

namespace ewa {

double Axis::value(int i) const {
  if (steps <= 1) return min;
  if (i == steps - 1) return max;
  return min + (max - min) * (static_cast<double>(i) / (steps - 1));
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

void require_axis(const Axis& ax, int min_steps) {
  if (ax.steps < min_steps) {
    throw DomainError("axis '" + ax.name + "' needs at least " + std::to_string(min_steps) +
                      " steps");
  }
  if (!(ax.max >= ax.min)) {
    throw DomainError("axis '" + ax.name + "' has max < min");
  }
}

}  // namespace

DiagramGrid<BifurcationColumn> bifurcation_diagram(double b, double sigma, double a_min,
                                                   double a_max, int a_steps, int samples_per_a,
                                                   const BifurcationOptions& opts) {
  if (!(a_min > 0.0 && a_min < a_max)) throw DomainError("bifurcation needs 0 < a_min < a_max");
  if (samples_per_a < 0) throw DomainError("samples per a must be non-negative");
  Axis a_axis{"a", a_min, a_max, a_steps};
  require_axis(a_axis, 1);
  validate(Params{a_min, b, sigma});

  DiagramGrid<BifurcationColumn> grid;
  grid.axes = {a_axis};
  grid.meta.sigma = sigma;
  grid.meta.b = b;
  grid.meta.x0 = opts.x0;
  grid.meta.transient = opts.transient;
  grid.cells.resize(static_cast<std::size_t>(a_steps));
  parallel_for(grid.cells.size(), opts.threads, [&](std::size_t i) {
    const double a = a_axis.value(static_cast<int>(i));
    OrbitTrace t = iterate({a, b, sigma}, opts.x0, opts.transient, samples_per_a);
    auto& cell = grid.cells[i];
    cell.coords = {a};
    cell.payload.samples = std::move(t.samples);
    cell.payload.clamp_events = t.clamp_events;
  });
  return grid;
}

DiagramGrid<PeriodCell> period_diagram(double sigma, const Axis& a_axis, const Axis& b_axis,
                                       const PeriodOptions& opts, unsigned threads) {
  require_axis(a_axis, 2);
  require_axis(b_axis, 2);
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in [0,1]");
  if (!(a_axis.min > 0.0)) throw DomainError("intensity axis must be positive");

  DiagramGrid<PeriodCell> grid;
  grid.axes = {a_axis, b_axis};
  grid.meta.sigma = sigma;
  grid.meta.x0 = opts.x0;
  grid.meta.transient = opts.transient;
  grid.meta.tol = opts.tol;
  grid.meta.max_period = opts.max_period;
  const auto nb = static_cast<std::size_t>(b_axis.steps);
  grid.cells.resize(static_cast<std::size_t>(a_axis.steps) * nb);
  parallel_for(grid.cells.size(), threads, [&](std::size_t idx) {
    const double a = a_axis.value(static_cast<int>(idx / nb));
    const double b = b_axis.value(static_cast<int>(idx % nb));
    auto& cell = grid.cells[idx];
    cell.coords = {a, b};
    if (!(b > 0.0 && b < 1.0)) {
      cell.payload.valid = false;
      return;
    }
    const PeriodReport r = detect_period({a, b, sigma}, opts);
    cell.payload.period = r.period.value_or(0);
  });
  return grid;
}

DiagramGrid<RegimeCell> regime_map(const Axis& sigma_axis, const Axis& b_axis) {
  require_axis(sigma_axis, 2);
  require_axis(b_axis, 2);
  if (!(sigma_axis.min >= 0.0 && sigma_axis.max <= 1.0)) {
    throw DomainError("sigma axis must lie in [0,1]");
  }
  DiagramGrid<RegimeCell> grid;
  grid.axes = {sigma_axis, b_axis};
  const auto nb = static_cast<std::size_t>(b_axis.steps);
  grid.cells.resize(static_cast<std::size_t>(sigma_axis.steps) * nb);
  for (std::size_t idx = 0; idx < grid.cells.size(); ++idx) {
    const double s = sigma_axis.value(static_cast<int>(idx / nb));
    const double b = b_axis.value(static_cast<int>(idx % nb));
    auto& cell = grid.cells[idx];
    cell.coords = {s, b};
    if (!(b > 0.0 && b < 1.0)) {
      cell.payload.valid = false;
      continue;
    }
    cell.payload.label = regime(b, s);
  }
  return grid;
}

std::vector<std::array<double, 2>> potential_curve(const Params& p, int points) {
  if (points < 2) throw DomainError("potential curve needs at least 2 points");
  const Axis xs{"x", 0.0, 1.0, points};
  std::vector<std::array<double, 2>> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double x = xs.value(i);
    out.push_back({x, potential(p, x)});
  }
  return out;
}

CobwebTrace cobweb_trace(const Params& p, double x0, int steps, int potential_points) {
  if (steps < 0) throw DomainError("cobweb needs a non-negative step count");
  const OrbitTrace t = iterate(p, x0, 0, steps);
  CobwebTrace out;
  out.segments.reserve(2 * static_cast<std::size_t>(steps));
  double x = x0;
  int index = 0;
  for (double next : t.samples) {
    out.segments.push_back({index++, {x, x}, {x, next}});
    out.segments.push_back({index++, {x, next}, {next, next}});
    x = next;
  }
  out.potential = potential_curve(p, potential_points);
  return out;
}

bool analytically_stable(double a, double b, double sigma) {
  if (a < boundary_onset(sigma)) return true;
  const BoundaryPoint pt = boundary_point(sigma, a);
  return b < pt.b1 || b > pt.b2;
}

FrontierCheck check_period1_frontier(const DiagramGrid<PeriodCell>& grid) {
  const Axis& ax = grid.axes.at(0);
  const Axis& bx = grid.axes.at(1);
  const double s = grid.meta.sigma;
  const int na = ax.steps;
  const int nb = bx.steps;

  std::vector<signed char> expected(grid.cells.size(), -1);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      const double b = bx.value(j);
      if (b > 0.0 && b < 1.0) {
        expected[static_cast<std::size_t>(i * nb + j)] = analytically_stable(ax.value(i), b, s) ? 1 : 0;
      }
    }
  }

  FrontierCheck fc;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      const auto idx = static_cast<std::size_t>(i * nb + j);
      const auto& cell = grid.cells[idx].payload;
      if (!cell.valid) continue;
      ++fc.cells;
      const bool measured = cell.period == 1;
      const bool want = expected[idx] == 1;
      if (measured == want) continue;
      ++fc.disagreements;
      bool frontier_adjacent = false;
      for (int di = -1; di <= 1 && !frontier_adjacent; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const int ii = i + di;
          const int jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= na || jj >= nb) continue;
          const signed char e = expected[static_cast<std::size_t>(ii * nb + jj)];
          if (e >= 0 && (e == 1) != want) {
            frontier_adjacent = true;
            break;
          }
        }
      }
      if (!frontier_adjacent) ++fc.far_disagreements;
    }
  }
  return fc;
}

}  // namespace ewa
