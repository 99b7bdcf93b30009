#include "ewa/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <memory>
#include <ostream>
#include <sstream>

#include "ewa/acceptance.hpp"
#include "ewa/dynamics.hpp"
#include "ewa/equilibrium.hpp"
#include "ewa/format.hpp"
#include "ewa/orbits.hpp"
#include "ewa/stability.hpp"
#include "ewa/sweep.hpp"

namespace ewa::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Output of one command before it is written out.
struct Result {
  RunHeader header;
  bool table = false;
  std::string csv_body;  ///< column line and rows, for tables
  Json json;             ///< payload fields, for scalar results
  std::string text;      ///< verbatim output (verify)
  int status = kExitOk;
};

/// A subcommand together with the flags it echoes into the header.
class Command {
 public:
  Command(CLI::App& parent, std::string name, std::string description)
      : app_(parent.add_subcommand(std::move(name), std::move(description))) {}

  CLI::App* app() const { return app_; }

  double& real(const std::string& flag, double def, const std::string& help, bool required = false) {
    double& v = reals_.emplace_back(def);
    auto* opt = app_->add_option(flag, v, help);
    if (required) {
      opt->required();
    } else {
      opt->capture_default_str();
    }
    echo_.emplace_back(flag, [&v] { return format_double(v); });
    return v;
  }

  std::int64_t& integer(const std::string& flag, std::int64_t def, const std::string& help) {
    std::int64_t& v = ints_.emplace_back(def);
    app_->add_option(flag, v, help)->capture_default_str();
    echo_.emplace_back(flag, [&v] { return std::to_string(v); });
    return v;
  }

  bool& boolean(const std::string& flag, bool def, const std::string& help) {
    bool& v = bools_.emplace_back(def);
    app_->add_option(flag, v, help)->capture_default_str();
    echo_.emplace_back(flag, [&v] { return std::string(v ? "true" : "false"); });
    return v;
  }

  std::string& format() {
    std::string& v = strings_.emplace_back("csv");
    format_ = &v;
    app_->add_option("--format", v, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    echo_.emplace_back("--format", [&v] { return v; });
    return v;
  }

  unsigned& threads() {
    unsigned& v = threads_.emplace_back(0u);
    app_->add_option("--threads", v, "sweep workers, 0 = all cores")->capture_default_str();
    return v;
  }

  RunHeader header() const {
    RunHeader h;
    h.subcommand = app_->get_name();
    for (const auto& [flag, value] : echo_) h.args.emplace_back(flag, value());
    return h;
  }

  /// Selected output format; commands without --format always print JSON.
  std::string output_format() const { return format_ ? *format_ : std::string("json"); }

  std::function<Result()> action;

 private:
  CLI::App* app_;
  std::string* format_ = nullptr;
  std::deque<double> reals_;
  std::deque<std::int64_t> ints_;
  std::deque<bool> bools_;
  std::deque<std::string> strings_;
  std::deque<unsigned> threads_;
  std::vector<std::pair<std::string, std::function<std::string()>>> echo_;
};

/// The (a, b, sigma) flags shared by most commands.
struct AbsRefs {
  double* a;
  double* b;
  double* sigma;

  [[nodiscard]] Params params() const { return {*a, *b, *sigma}; }
};

int to_int(std::int64_t v, const char* what) {
  if (v < 0 || v > std::numeric_limits<int>::max()) {
    throw DomainError(std::string(what) + " out of range");
  }
  return static_cast<int>(v);
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json period_json(const PeriodReport& r) {
  Json j;
  j["period"] = r.period ? Json(*r.period) : Json(nullptr);
  j["orbit"] = r.orbit;
  j["multiplier"] = number_or_null(r.multiplier);
  j["class"] = std::string(to_string(r.cls));
  return j;
}

Json interval_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

template <typename Writer>
Result table(RunHeader h, const Writer& write) {
  Result r;
  r.header = std::move(h);
  r.table = true;
  std::ostringstream os;
  write(os);
  r.csv_body = os.str();
  return r;
}

Result scalar(RunHeader h, Json payload) {
  Result r;
  r.header = std::move(h);
  r.json = std::move(payload);
  return r;
}

Json parse_field(const std::string& s) {
  std::int64_t n = 0;
  const auto ires = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ires.ec == std::errc{} && ires.ptr == s.data() + s.size()) return n;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec == std::errc{} && res.ptr == s.data() + s.size()) return v;
  return s;
}

void emit(const Result& r, const std::string& format, std::ostream& os) {
  if (!r.text.empty()) {
    os << r.text;
    return;
  }
  if (r.table && format == "csv") {
    write_header(os, r.header);
    os << r.csv_body;
    return;
  }
  Json j;
  j["command"] = r.header.subcommand;
  j["args"] = r.header.args_line();
  if (!r.header.notes.empty()) j["notes"] = r.header.notes;
  if (r.table) {
    std::istringstream is(r.csv_body);
    const CsvTable t = read_csv(is);
    j["columns"] = t.columns;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json jr = Json::array();
      for (const auto& f : row) jr.push_back(parse_field(f));
      rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
  } else {
    for (const auto& [k, v] : r.json.items()) j[k] = v;
  }
  os << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discounted EWA dynamics in two-resource congestion games", "ewa"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path = "-";
  app.add_option("--out", out_path, "output file, '-' for standard output")->capture_default_str();

  std::deque<Command> commands;
  const auto add = [&](const std::string& name, const std::string& help) -> Command& {
    return commands.emplace_back(app, name, help);
  };
  const auto param_abs = [](Command& c) {
    return AbsRefs{&c.real("--a", 0.0, "intensity of choice", true),
                   &c.real("--b", 0.0, "equilibrium split", true),
                   &c.real("--sigma", 0.0, "discount factor", true)};
  };

  {
    Command& c = add("fixpoint", "interior equilibrium and its stability");
    auto p = param_abs(c);
    c.action = [&c, p] {
      const Params q = p.params();
      const auto e = solve_fixed_point(q);
      const auto s = classify(q);
      return scalar(c.header(), Json{{"xbar", e.xbar},
                                     {"residual", e.residual},
                                     {"multiplier", s.multiplier},
                                     {"class", std::string(to_string(s.local))}});
    };
  }
  {
    Command& c = add("threshold", "intensity a0 where the equilibrium loses stability");
    double& b = c.real("--b", 0.0, "equilibrium split", true);
    double& s = c.real("--sigma", 0.0, "discount factor", true);
    c.action = [&c, &b, &s] { return scalar(c.header(), Json{{"a0", threshold_a0(b, s)}}); };
  }
  {
    Command& c = add("boundary", "flip-bifurcation boundary curves b1(a), b2(a)");
    double& s = c.real("--sigma", 0.0, "discount factor", true);
    double& a_min = c.real("--a-min", 0.0, "first intensity, 0 = onset 4(2-sigma)");
    double& a_max = c.real("--a-max", 54.0, "last intensity");
    std::int64_t& steps = c.integer("--steps", 200, "grid points");
    c.format();
    c.action = [&c, &s, &a_min, &a_max, &steps] {
      const double lo = a_min > 0.0 ? a_min : boundary_onset(s);
      const Axis ax{"a", lo, a_max, to_int(steps, "--steps")};
      if (ax.steps < 1 || a_max < lo) throw DomainError("boundary needs a_min <= a_max and steps >= 1");
      std::vector<double> grid;
      for (int i = 0; i < ax.steps; ++i) grid.push_back(ax.value(i));
      const auto bb = boundary_curves(s, grid);
      return table(c.header(), [&](std::ostream& os) { write_boundary_csv(os, bb); });
    };
  }
  {
    Command& c = add("astar", "intensity beyond which every equilibrium is repelling");
    double& s = c.real("--sigma", 0.0, "discount factor", true);
    c.action = [&c, &s] {
      const auto v = universal_threshold_astar(s);
      return scalar(c.header(), Json{{"exists", v.has_value()},
                                     {"astar", v ? number_or_null(*v) : Json(nullptr)},
                                     {"overflow", v.has_value() && std::isinf(*v)}});
    };
  }
  {
    Command& c = add("regime", "large-intensity regime label");
    double& b = c.real("--b", 0.0, "equilibrium split", true);
    double& s = c.real("--sigma", 0.0, "discount factor", true);
    c.action = [&c, &b, &s] {
      const auto lbl = regime(b, s);
      return scalar(c.header(), Json{{"regime", std::string(to_string(lbl))},
                                     {"period2_interval",
                                      Json::array({(1.0 - s) / (2.0 - s), 1.0 / (2.0 - s)})}});
    };
  }
  {
    Command& c = add("orbit", "iterate the map and record the states");
    auto p = param_abs(c);
    double& x0 = c.real("--x0", 0.2, "initial state");
    std::int64_t& transient = c.integer("--transient", 0, "discarded steps");
    std::int64_t& samples = c.integer("--samples", 100, "recorded steps");
    c.format();
    c.action = [&c, p, &x0, &transient, &samples] {
      const auto t = iterate(p.params(), x0, transient, samples);
      RunHeader h = c.header();
      h.notes.push_back("clamp_events: " + std::to_string(t.clamp_events));
      return table(h, [&](std::ostream& os) { write_orbit_csv(os, t); });
    };
  }
  {
    Command& c = add("period", "detect an attracting cycle of period <= max-period");
    auto p = param_abs(c);
    double& x0 = c.real("--x0", 0.2, "initial state");
    std::int64_t& transient = c.integer("--transient", 20000, "discarded steps");
    std::int64_t& max_period = c.integer("--max-period", 8, "largest period tested");
    double& tol = c.real("--tol", 1e-13, "closure tolerance");
    bool& multi = c.boolean("--multi-seed", false, "also try x0 in {0.2, 0.499, 0.8}");
    c.action = [&c, p, &x0, &transient, &max_period, &tol, &multi] {
      PeriodOptions o;
      o.x0 = x0;
      o.transient = transient;
      o.max_period = to_int(max_period, "--max-period");
      o.tol = tol;
      o.multi_seed = multi;
      return scalar(c.header(), period_json(detect_period(p.params(), o)));
    };
  }
  {
    Command& c = add("certify-chaos", "period-3 orbit and entropy bound");
    auto p = param_abs(c);
    c.action = [&c, p] {
      const auto cc = certify_chaos(p.params());
      const auto& w = cc.witness;
      return scalar(c.header(),
                    Json{{"hypothesis_met", cc.hypothesis_met},
                         {"period3_found", cc.period3_found},
                         {"period3_orbit_y", cc.period3_found ? Json(cc.period3_orbit) : Json(nullptr)},
                         {"fixed_point_y", cc.fixed_point_y},
                         {"witness",
                          Json{{"found", w.found},
                               {"passes", w.passes},
                               {"mirrored", w.mirrored},
                               {"x0", w.x0},
                               {"F_x0", w.F_x0},
                               {"F3_x0", w.F3_x0},
                               {"c_minus", w.c_minus},
                               {"c_plus", w.c_plus}}},
                         {"entropy_lower_bound", cc.entropy_lower_bound}});
    };
  }
  {
    Command& c = add("verify-trap", "check the period-2 trapping intervals");
    auto p = param_abs(c);
    c.action = [&c, p] {
      const auto t = verify_period2_trap(p.params());
      return scalar(c.header(), Json{{"phi_b", t.phi_b},
                                     {"phi_1mb", t.phi_1mb},
                                     {"x_minus", t.x_minus},
                                     {"x_plus", t.x_plus},
                                     {"K", t.K},
                                     {"I_minus", interval_json(t.I_minus)},
                                     {"I_plus", interval_json(t.I_plus)},
                                     {"image_minus", interval_json(t.image_minus)},
                                     {"image_plus", interval_json(t.image_plus)},
                                     {"identity_residual", t.identity_residual},
                                     {"inclusions_hold", t.inclusions_hold},
                                     {"derivative_bound_holds", t.derivative_bound_holds},
                                     {"sandwich_holds", t.sandwich_holds},
                                     {"refinement_holds", t.refinement_holds}});
    };
  }
  {
    Command& c = add("lyapunov", "Lyapunov exponent estimate along an orbit");
    auto p = param_abs(c);
    double& x0 = c.real("--x0", 0.2, "initial state");
    std::int64_t& transient = c.integer("--transient", 1000, "discarded steps");
    std::int64_t& n = c.integer("--n", 100000, "averaged steps");
    c.action = [&c, p, &x0, &transient, &n] {
      const auto l = lyapunov_estimate(p.params(), x0, transient, n);
      return scalar(c.header(), Json{{"exponent", l.exponent}, {"floored_terms", l.floored_terms}});
    };
  }
  {
    Command& c = add("bifurcation", "post-transient states over a range of intensities");
    double& b = c.real("--b", 0.0, "equilibrium split", true);
    double& s = c.real("--sigma", 0.0, "discount factor", true);
    double& a_min = c.real("--a-min", 1.0, "first intensity");
    double& a_max = c.real("--a-max", 60.0, "last intensity");
    std::int64_t& a_steps = c.integer("--a-steps", 200, "intensity grid points");
    std::int64_t& samples = c.integer("--samples", 100, "states recorded per intensity");
    double& x0 = c.real("--x0", 0.2, "initial state");
    std::int64_t& transient = c.integer("--transient", 20000, "discarded steps");
    c.format();
    unsigned& threads = c.threads();
    c.action = [&c, &b, &s, &a_min, &a_max, &a_steps, &samples, &x0, &transient, &threads] {
      BifurcationOptions o;
      o.x0 = x0;
      o.transient = transient;
      o.threads = threads;
      const auto g = bifurcation_diagram(b, s, a_min, a_max, to_int(a_steps, "--a-steps"),
                                         to_int(samples, "--samples"), o);
      std::int64_t clamps = 0;
      for (const auto& cell : g.cells) clamps += cell.payload.clamp_events;
      RunHeader h = c.header();
      h.notes.push_back("clamp_events: " + std::to_string(clamps));
      return table(h, [&](std::ostream& os) { write_bifurcation_csv(os, g); });
    };
  }
  {
    Command& c = add("period-diagram", "detected period on an (a, b) grid");
    double& s = c.real("--sigma", 0.0, "discount factor", true);
    double& a_min = c.real("--a-min", 4.0, "first intensity");
    double& a_max = c.real("--a-max", 54.0, "last intensity");
    std::int64_t& a_steps = c.integer("--a-steps", 200, "intensity grid points");
    double& b_min = c.real("--b-min", 0.0, "first split");
    double& b_max = c.real("--b-max", 1.0, "last split");
    std::int64_t& b_steps = c.integer("--b-steps", 200, "split grid points");
    double& x0 = c.real("--x0", 0.2, "initial state");
    std::int64_t& transient = c.integer("--transient", 20000, "discarded steps");
    std::int64_t& max_period = c.integer("--max-period", 8, "largest period tested");
    double& tol = c.real("--tol", 1e-13, "closure tolerance");
    bool& multi = c.boolean("--multi-seed", false, "also try x0 in {0.2, 0.499, 0.8}");
    c.format();
    unsigned& threads = c.threads();
    c.action = [&c, &s, &a_min, &a_max, &a_steps, &b_min, &b_max, &b_steps, &x0, &transient,
                &max_period, &tol, &multi, &threads] {
      PeriodOptions o;
      o.x0 = x0;
      o.transient = transient;
      o.max_period = to_int(max_period, "--max-period");
      o.tol = tol;
      o.multi_seed = multi;
      const auto g = period_diagram(s, Axis{"a", a_min, a_max, to_int(a_steps, "--a-steps")},
                                    Axis{"b", b_min, b_max, to_int(b_steps, "--b-steps")}, o,
                                    threads);
      RunHeader h = c.header();
      h.notes.emplace_back(std::string("legend: ") + kPeriodLegend);
      h.notes.emplace_back(std::string("colors: ") + kPeriodColors);
      return table(h, [&](std::ostream& os) { write_period_csv(os, g); });
    };
  }
  {
    Command& c = add("regime-map", "analytic regime labels on a (sigma, b) grid");
    std::int64_t& s_steps = c.integer("--sigma-steps", 101, "sigma grid points over [0,1]");
    std::int64_t& b_steps = c.integer("--b-steps", 101, "split grid points over [0,1]");
    c.format();
    c.action = [&c, &s_steps, &b_steps] {
      const auto g = regime_map(Axis{"sigma", 0.0, 1.0, to_int(s_steps, "--sigma-steps")},
                                Axis{"b", 0.0, 1.0, to_int(b_steps, "--b-steps")});
      return table(c.header(), [&](std::ostream& os) { write_regime_csv(os, g); });
    };
  }
  {
    Command& c = add("cobweb", "staircase segments of an orbit");
    auto p = param_abs(c);
    double& x0 = c.real("--x0", 0.2, "initial state");
    std::int64_t& steps = c.integer("--steps", 50, "map applications");
    c.format();
    c.action = [&c, p, &x0, &steps] {
      const auto t = cobweb_trace(p.params(), x0, to_int(steps, "--steps"), 2);
      RunHeader h = c.header();
      h.notes.emplace_back("overlay: ewa potential --a A --b B");
      return table(h, [&](std::ostream& os) { write_cobweb_csv(os, t); });
    };
  }
  {
    Command& c = add("potential", "potential (cost) landscape over [0,1]");
    double& a = c.real("--a", 0.0, "intensity of choice", true);
    double& b = c.real("--b", 0.0, "equilibrium split", true);
    std::int64_t& points = c.integer("--points", 1000, "grid points");
    c.format();
    c.action = [&c, &a, &b, &points] {
      const auto pts = potential_curve({a, b, 0.0}, to_int(points, "--points"));
      return table(c.header(), [&](std::ostream& os) { write_potential_csv(os, pts); });
    };
  }
  {
    Command& c = add("verify", "run the acceptance criteria");
    unsigned& threads = c.threads();
    bool& info = c.boolean("--informational", true, "also print diagnostic lines");
    c.action = [&c, &threads, &info] {
      Result r;
      r.header = c.header();
      std::ostringstream os;
      const auto results = run_acceptance({threads, info}, os);
      r.text = os.str();
      r.status = all_passed(results) ? kExitOk : kExitFailure;
      return r;
    };
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ewa: " << e.what() << '\n';
    return kExitUsage;
  }

  for (auto& c : commands) {
    if (!c.app()->parsed()) continue;
    const std::string format = c.output_format();
    Result r;
    try {
      r = c.action();
    } catch (const DomainError& e) {
      err << "ewa " << c.app()->get_name() << ": " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "ewa " << c.app()->get_name() << ": internal failure: " << e.what() << '\n';
      return kExitFailure;
    }
    if (out_path == "-") {
      emit(r, format, out);
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) {
        err << "ewa: cannot open " << out_path << " for writing\n";
        return kExitFailure;
      }
      emit(r, format, file);
      if (!file) {
        err << "ewa: write to " << out_path << " failed\n";
        return kExitFailure;
      }
    }
    return r.status;
  }
  err << "ewa: no subcommand\n";
  return kExitUsage;
}

}  // namespace ewa::cli
