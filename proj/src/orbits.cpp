#include "ewa/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ewa/dynamics.hpp"
#include "ewa/equilibrium.hpp"
#include "ewa/stability.hpp"

namespace ewa {

std::string_view to_string(CycleClass c) {
  switch (c) {
    case CycleClass::attracting: return "attracting";
    case CycleClass::repelling: return "repelling";
    case CycleClass::neutral: return "neutral";
    case CycleClass::undetected: return "undetected";
  }
  return "undetected";
}

double advance(const Params& p, double x, bool& clamped) {
  const double next = step_x(p, x);
  const double c = clamp_state(next);
  clamped = c != next;
  return c;
}

namespace {

double advance(const Params& p, double x) {
  bool ignored = false;
  return advance(p, x, ignored);
}

void require_interior(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(std::string(what) + " must lie in (0,1)");
  }
}

CycleClass cycle_class(double multiplier) {
  const double m = std::abs(multiplier);
  if (m < 1.0) return CycleClass::attracting;
  if (m > 1.0) return CycleClass::repelling;
  return CycleClass::neutral;
}

// State stored as its distance to the nearer endpoint, so that points near 1
// keep the same precision as their mirror images near 0.
struct Folded {
  double v = 0.5;      // min(x, 1 - x)
  bool upper = false;  // x = 1 - v
};

Folded fold(double x) { return x <= 0.5 ? Folded{x, false} : Folded{1.0 - x, true}; }

double unfold(Folded s) { return s.upper ? 1.0 - s.v : s.v; }

// x - y
double difference(Folded x, Folded y) {
  if (x.upper == y.upper) return x.upper ? y.v - x.v : x.v - y.v;
  return unfold(x) - unfold(y);
}

// log((1-x)/x) and x(1-x)
double folded_log_odds(Folded s) {
  const double lo = std::log1p(-s.v) - std::log(s.v);
  return s.upper ? -lo : lo;
}

Folded folded_step(const Params& p, Folded s) {
  const double shift = s.upper ? (1.0 - p.b) - s.v : s.v - p.b;
  double u = p.a * shift;
  if (p.sigma < 1.0) u += (1.0 - p.sigma) * folded_log_odds(s);
  const double f = logistic(-u);
  Folded out = f <= 0.5 ? Folded{f, false} : Folded{logistic(u), true};
  out.v = std::max(out.v, kStateFloor);
  return out;
}

double folded_deriv(const Params& p, Folded s) {
  const Folded f = folded_step(p, s);
  const double fw = f.v * (1.0 - f.v);
  return fw * ((1.0 - p.sigma) / (s.v * (1.0 - s.v)) - p.a);
}

Folded folded_iterate(const Params& p, Folded s, std::int64_t n) {
  for (std::int64_t k = 0; k < n; ++k) s = folded_step(p, s);
  return s;
}

PeriodReport make_report(const Params& p, Folded start, int period) {
  PeriodReport r;
  r.period = period;
  r.orbit.reserve(static_cast<std::size_t>(period));
  Folded x = start;
  double m = 1.0;
  for (int k = 0; k < period; ++k) {
    r.orbit.push_back(unfold(x));
    m *= folded_deriv(p, x);
    x = folded_step(p, x);
  }
  r.multiplier = m;
  r.cls = cycle_class(m);
  return r;
}

}  // namespace

OrbitTrace iterate(const Params& p, double x0, std::int64_t transient, std::int64_t samples) {
  validate(p);
  require_interior(x0, "initial state x0");
  if (transient < 0 || samples < 0) throw DomainError("iteration counts must be non-negative");

  OrbitTrace t;
  t.params = p;
  t.x0 = x0;
  t.transient = transient;
  t.samples.reserve(static_cast<std::size_t>(samples));
  double x = x0;
  bool clamped = false;
  for (std::int64_t n = 0; n < transient; ++n) {
    x = advance(p, x, clamped);
    t.clamp_events += clamped ? 1 : 0;
  }
  for (std::int64_t n = 0; n < samples; ++n) {
    x = advance(p, x, clamped);
    t.clamp_events += clamped ? 1 : 0;
    t.samples.push_back(x);
  }
  return t;
}

namespace {

PeriodReport refine_orbit(const Params& p, int T, Folded seed) {
  constexpr int kMaxNewton = 100;
  constexpr double kResidualTol = 1e-12;
  constexpr double kDivisorTol = 1e-10;

  Folded x = seed;
  bool converged = false;
  for (int it = 0; it < kMaxNewton; ++it) {
    Folded y = x;
    double slope = 1.0;
    for (int k = 0; k < T; ++k) {
      slope *= folded_deriv(p, y);
      y = folded_step(p, y);
    }
    const double g = difference(y, x);
    if (std::abs(g) < kResidualTol) {
      converged = true;
      break;
    }
    const double gp = slope - 1.0;
    if (gp == 0.0 || !std::isfinite(gp)) break;
    const double dx = -g / gp;
    if (!std::isfinite(dx)) break;
    Folded next{x.upper ? x.v - dx : x.v + dx, x.upper};
    if (next.v > 0.5) {
      next = fold(unfold(next));
    } else if (!(next.v > 0.0)) {
      // damp back into the open interval
      next.v = 0.5 * x.v;
    }
    x = next;
  }
  if (!converged) return {};

  int period = T;
  for (int d = 1; d < T; ++d) {
    if (T % d == 0 && std::abs(difference(folded_iterate(p, x, d), x)) < kDivisorTol) {
      period = d;
      break;
    }
  }
  return make_report(p, x, period);
}

}  // namespace

PeriodReport find_periodic_orbit(const Params& p, int T, double seed) {
  validate(p);
  if (T < 1) throw DomainError("period T must be at least 1");
  require_interior(seed, "seed");
  return refine_orbit(p, T, fold(seed));
}

PeriodReport detect_period(const Params& p, const PeriodOptions& opts) {
  constexpr int kSpuriousRetries = 20;
  constexpr std::int64_t kRetryStride = 1000;
  validate(p);
  if (opts.max_period < 1) throw DomainError("max_period must be at least 1");
  if (opts.transient < 0) throw DomainError("transient must be non-negative");

  std::vector<double> seeds{opts.x0};
  if (opts.multi_seed) {
    for (double s : {0.2, 0.5 - 1e-3, 0.8}) {
      if (s != opts.x0) seeds.push_back(s);
    }
  }
  for (double seed : seeds) {
    require_interior(seed, "initial state x0");
    Folded x = folded_iterate(p, fold(seed), opts.transient);
    // an orbit creeping away from the fixed endpoints 0 and 1 moves by less
    // than tol per step; such a hit refines to a repelling cycle and is retried
    for (int attempt = 0; attempt <= kSpuriousRetries; ++attempt) {
      Folded y = x;
      bool spurious = false;
      for (int n = 1; n <= opts.max_period && !spurious; ++n) {
        y = folded_step(p, y);
        if (std::abs(difference(y, x)) < opts.tol) {
          PeriodReport refined = refine_orbit(p, n, x);
          if (!refined.period) refined = make_report(p, x, n);
          if (refined.cls != CycleClass::repelling) return refined;
          spurious = true;
        }
      }
      if (!spurious) break;
      x = folded_iterate(p, x, kRetryStride);
    }
  }
  return {};
}

namespace {

double phi(double b, double sigma) { return (2.0 - sigma) * b - (1.0 - sigma); }

// log of (1 - sigma) - F'(y); finite exactly when F'(y) < 1 - sigma holds.
double log_slope_deficit(const Params& p, double y) {
  const double z = std::abs(p.a * y);
  return std::log(p.a) - z - 2.0 * std::log1p(std::exp(-z));
}

bool derivative_bound_on(const Params& p, const Interval& I) {
  constexpr int kSamples = 1000;
  for (int k = 0; k <= kSamples; ++k) {
    const double y = I.lo + (I.hi - I.lo) * (static_cast<double>(k) / kSamples);
    if (!(derivs_y(p, y).d1 >= 0.0)) return false;
    if (!std::isfinite(log_slope_deficit(p, y))) return false;
  }
  return true;
}

bool sandwich_at(const Params& p, double y) {
  // F_-(y) - F(y) = logistic(a y), F(y) - F_+(y) = logistic(-a y)
  return logistic(p.a * y) > 0.0 && logistic(-p.a * y) > 0.0;
}

bool refinement_at(const Params& p, double y) {
  if (y < 0.0) {
    // F_-(y) + 1/(a y) < F(y)
    return 1.0 / (p.a * -y) - logistic(p.a * y) > 0.0;
  }
  if (y > 0.0) {
    // F(y) < F_+(y) + 1/(a y)
    return 1.0 / (p.a * y) - logistic(-p.a * y) > 0.0;
  }
  return false;
}

}  // namespace

TrapVerification verify_period2_trap(const Params& p) {
  validate(p);
  const double s = p.sigma;
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError("trap construction needs sigma in (0,1); half-width K is undefined otherwise");
  }
  const double b0 = std::min(p.b, 1.0 - p.b);
  if (!(b0 > (1.0 - s) / (2.0 - s))) {
    throw DomainError("trap hypothesis failed: min(b, 1-b) must exceed (1-sigma)/(2-sigma)");
  }

  TrapVerification v;
  const double scale = s * (2.0 - s);
  v.phi_b = phi(p.b, s);
  v.phi_1mb = phi(1.0 - p.b, s);
  v.x_minus = -v.phi_b / scale;
  v.x_plus = v.phi_1mb / scale;
  v.K = phi(b0, s) / (2.0 * scale);
  v.I_minus = {v.x_minus - v.K, v.x_minus + v.K};
  v.I_plus = {v.x_plus - v.K, v.x_plus + v.K};

  const double lower_map_at_minus = (1.0 - s) * v.x_minus + 1.0 - p.b;  // F_-(x_-)
  const double upper_map_at_plus = (1.0 - s) * v.x_plus - p.b;          // F_+(x_+)
  v.identity_residual = std::max(std::abs(lower_map_at_minus - v.x_plus),
                                 std::abs(upper_map_at_plus - v.x_minus));

  v.derivative_bound_holds = derivative_bound_on(p, v.I_minus) && derivative_bound_on(p, v.I_plus);

  // With F' >= 0 on the traps, the images are spanned by the endpoint images.
  v.image_minus = {step_y(p, v.I_minus.lo), step_y(p, v.I_minus.hi)};
  v.image_plus = {step_y(p, v.I_plus.lo), step_y(p, v.I_plus.hi)};
  v.inclusions_hold = v.derivative_bound_holds && v.I_plus.contains(v.image_minus) &&
                      v.I_minus.contains(v.image_plus);

  v.sandwich_holds = true;
  v.refinement_holds = true;
  for (double y : {v.I_minus.lo, v.I_minus.hi, v.I_plus.lo, v.I_plus.hi}) {
    v.sandwich_holds = v.sandwich_holds && sandwich_at(p, y);
    v.refinement_holds = v.refinement_holds && refinement_at(p, y);
  }
  return v;
}

std::optional<double> smallest_trapping_intensity(double b, double sigma,
                                                  std::span<const double> a_grid) {
  for (double a : a_grid) {
    const TrapVerification v = verify_period2_trap({a, b, sigma});
    if (v.derivative_bound_holds && v.inclusions_hold) return a;
  }
  return std::nullopt;
}

double golden_entropy() { return std::log((1.0 + std::sqrt(5.0)) / 2.0); }

namespace {

double step_y_n(const Params& p, double y, int n) {
  for (int k = 0; k < n; ++k) y = step_y(p, y);
  return y;
}

template <typename Fn>
double bisect_root(Fn&& g, double lo, double hi) {
  double glo = g(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Period3Witness period3_witness(const Params& q, bool mirrored) {
  Period3Witness w;
  w.mirrored = mirrored;
  const auto crit = critical_points_y(q);
  if (!crit) return w;
  w.c_minus = crit->first;
  w.c_plus = crit->second;
  // F is decreasing on [c_-, c_+]; need F(c_-) >= c_- >= F(c_+).
  const auto g = [&](double y) { return step_y(q, y) - w.c_minus; };
  if (!(g(w.c_minus) >= 0.0 && g(w.c_plus) <= 0.0)) return w;
  w.found = true;
  w.x0 = bisect_root(g, w.c_minus, w.c_plus);
  w.F_x0 = step_y(q, w.x0);
  w.F3_x0 = step_y_n(q, w.x0, 3);
  w.passes = w.F3_x0 > w.c_plus;
  return w;
}

}  // namespace

ChaosCertificate certify_chaos(const Params& p) {
  validate(p);
  const auto crit = critical_points_y(p);
  if (!crit) {
    throw DomainError("chaos certificate needs critical points: a > 4(1-sigma) and sigma < 1");
  }
  const auto [c_minus, c_plus] = *crit;
  const double s = p.sigma;

  ChaosCertificate cert;
  const double lo_edge = (1.0 - s) / (2.0 - s);
  const double hi_edge = 1.0 / (2.0 - s);
  cert.hypothesis_met = (p.b <= 0.5 && p.b < lo_edge) || (p.b >= 0.5 && p.b > hi_edge);
  cert.fixed_point_y = to_conjugate(p, solve_fixed_point(p).xbar);
  cert.witness = p.b <= 0.5 ? period3_witness(p, false) : period3_witness(p.mirrored(), true);

  // Sign changes of F^3(y) - y on a fine grid over a neighbourhood of the
  // invariant interval [F(c_+), F(c_-)].
  constexpr int kGrid = 100000;
  constexpr double kCycleTol = 1e-9;
  constexpr double kFixedPointGap = 1e-6;
  const double lo = step_y(p, c_plus) - 1.0;
  const double hi = step_y(p, c_minus) + 1.0;
  const auto G = [&](double y) { return step_y_n(p, y, 3) - y; };

  double best_err = std::numeric_limits<double>::infinity();
  double prev_y = lo;
  double prev_g = G(lo);
  for (int i = 1; i < kGrid; ++i) {
    const double y = lo + (hi - lo) * (static_cast<double>(i) / (kGrid - 1));
    const double gy = G(y);
    if ((prev_g > 0.0) != (gy > 0.0) || prev_g == 0.0) {
      const double r = prev_g == 0.0 ? prev_y : bisect_root(G, prev_y, y);
      const std::array<double, 3> orbit{r, step_y(p, r), step_y_n(p, r, 2)};
      bool ok = true;
      double err = 0.0;
      for (double pt : orbit) {
        const double e = std::abs(step_y_n(p, pt, 3) - pt);
        err = std::max(err, e);
        ok = ok && e < kCycleTol && std::abs(step_y(p, pt) - pt) > kCycleTol &&
             std::abs(pt - cert.fixed_point_y) > kFixedPointGap;
      }
      ok = ok && std::abs(orbit[0] - orbit[1]) > kCycleTol &&
           std::abs(orbit[1] - orbit[2]) > kCycleTol && std::abs(orbit[0] - orbit[2]) > kCycleTol;
      if (ok && err < best_err) {
        best_err = err;
        cert.period3_found = true;
        cert.period3_orbit = orbit;
      }
    }
    prev_y = y;
    prev_g = gy;
  }
  cert.entropy_lower_bound = cert.period3_found ? golden_entropy() : 0.0;
  return cert;
}

LyapunovEstimate lyapunov_estimate(const Params& p, double x0, std::int64_t transient,
                                   std::int64_t n) {
  validate(p);
  require_interior(x0, "initial state x0");
  if (n < 1) throw DomainError("lyapunov estimate needs n >= 1");
  if (transient < 0) throw DomainError("transient must be non-negative");

  constexpr double kFloor = 1e-14;
  const auto crit = critical_points_x(p);
  double x = x0;
  for (std::int64_t k = 0; k < transient; ++k) x = advance(p, x);

  LyapunovEstimate est;
  double sum = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const double d = std::abs(deriv_x(p, x));
    const bool near_critical =
        crit && (std::abs(x - crit->first) < kFloor || std::abs(x - crit->second) < kFloor);
    if (d < kFloor || near_critical) {
      sum += std::log(kFloor);
      ++est.floored_terms;
    } else {
      sum += std::log(d);
    }
    x = advance(p, x);
  }
  est.exponent = sum / static_cast<double>(n);
  return est;
}

}  // namespace ewa
