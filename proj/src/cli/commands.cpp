#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "lindemann/cli.hpp"
#include "lindemann/error.hpp"
#include "lindemann/format.hpp"
#include "lindemann/parallel.hpp"
#include "lindemann/rational.hpp"
#include "lindemann/series.hpp"
#include "lindemann/slow_manifold.hpp"
#include "lindemann/verification.hpp"

namespace lindemann::cli {

using Json = nlohmann::ordered_json;

Params CommonOptions::params() const {
  const bool any_rate = k1 || km1 || k2;
  if (eps && any_rate) throw UsageError("give either --eps or --k1/--km1/--k2, not both");
  if (eps) return Params(*eps);
  if (!any_rate) throw UsageError("one of --eps or the rate constants --k1 --km1 --k2 is required");
  if (!(k1 && km1 && k2)) throw UsageError("--k1, --km1 and --k2 must be given together");
  return nondimensionalize(*k1, *km1, *k2, 0.0, 0.0).params;
}

IntegratorConfig CommonOptions::integrator(double rtol_default, double atol_default) const {
  IntegratorConfig cfg;
  cfg.rtol = rtol.value_or(rtol_default);
  cfg.atol = atol.value_or(atol_default);
  cfg.validate();
  return cfg;
}

std::vector<double> GridOptions::points() const {
  if (!(xmin > 0.0) || !(xmax >= xmin) || !std::isfinite(xmax)) throw UsageError("grid needs 0 < xmin <= xmax");
  if (n == 0) throw UsageError("grid needs --n >= 1");
  if (n == 1) return {xmin};
  if (log) return log_grid(xmin, xmax, n);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = xmin + (xmax - xmin) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.back() = xmax;
  return g;
}

namespace {

template <class F>
int emit(const std::string& path, std::ostream& out, F&& body) {
  if (path.empty()) return body(out);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  const int rc = body(file);
  file.flush();
  if (!file) throw UsageError("failed writing '" + path + "'");
  return rc;
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double parse_number(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

PhasePoint parse_point(std::string_view text) {
  auto sep = text.find(',');
  if (sep == std::string_view::npos) sep = text.find_first_of(" \t");
  if (sep == std::string_view::npos) throw UsageError("initial condition must look like x,y: '" + std::string(text) + "'");
  const PhasePoint pt{parse_number(text.substr(0, sep)), parse_number(text.substr(sep + 1))};
  if (!std::isfinite(pt.x) || !std::isfinite(pt.y) || !pt.in_quadrant()) {
    throw UsageError("initial condition must satisfy x, y >= 0: '" + std::string(text) + "'");
  }
  return pt;
}

std::vector<PhasePoint> read_inits_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::vector<PhasePoint> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    pts.push_back(parse_point(line));
  }
  return pts;
}

}  // namespace

int cmd_isoclines(const IsoclineOptions& o, std::ostream& out) {
  check_format(o.common.format);
  const Params p = o.common.params();
  const std::vector<double> xs = o.grid.points();
  for (double c : o.slopes) {
    if (!std::isfinite(c)) throw UsageError("slopes must be finite");
  }

  std::vector<std::string> header{"x", "H", "V", "alpha"};
  for (double c : o.slopes) header.push_back("F(" + format_double(c) + ")");

  // NaN marks a pole; it renders as an empty CSV field or a JSON null.
  std::vector<std::vector<double>> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    std::vector<double> row{x, horizontal_isocline(p, x), vertical_isocline(p, x), alpha_isocline(p, x)};
    for (double c : o.slopes) {
      if (c == -1.0) {
        row.push_back(0.0);
        continue;
      }
      try {
        row.push_back(isocline(p, Isocline::F(c), x));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PoleAtX) throw;
        row.push_back(std::nan(""));
      }
    }
    rows.push_back(std::move(row));
  }

  return emit(o.common.out, out, [&](std::ostream& os) {
    if (o.common.format == "json") {
      Json j;
      j["eps"] = p.eps();
      j["columns"] = header;
      Json data = Json::array();
      for (const auto& row : rows) {
        Json r = Json::array();
        for (double v : row) r.push_back(number_or_null(v));
        data.push_back(std::move(r));
      }
      j["rows"] = std::move(data);
      os << j.dump(2) << '\n';
    } else {
      write_csv_row(os, header);
      for (const auto& row : rows) {
        std::vector<std::string> fields;
        for (double v : row) fields.push_back(std::isnan(v) ? std::string() : format_double(v));
        write_csv_row(os, fields);
      }
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_slow_manifold(const SlowManifoldOptions& o, std::ostream& out) {
  check_format(o.common.format);
  const Params p = o.common.params();
  const std::vector<double> grid = o.grid.points();
  const IntegratorConfig cfg = o.common.integrator(1e-12, 1e-14);
  if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
  const std::string& m = o.method;
  if (m != "backward" && m != "bisection" && m != "both" && m != "blended") {
    throw UsageError("--method must be backward, bisection, both or blended");
  }

  SlowManifoldTable table;
  std::vector<double> delta;
  if (m == "backward" || m == "both") {
    table = compute_backward(p, grid, cfg);
  } else if (m == "bisection") {
    table = compute_bisection_table(p, grid, o.tol, cfg, o.threads);
  } else {
    const SlowManifold sm = SlowManifold::build(p, cfg);
    const auto& built = sm.table();
    const double table_err = *std::max_element(built.est_error.begin(), built.est_error.end());
    const OriginSeries origin = origin_coeffs(p, sm.options().origin_order);
    const InfinitySeries infinity = infinity_coeffs(p, sm.options().infinity_order);
    table.eps = p.eps();
    table.grid = grid;
    table.method = ManifoldMethod::Blended;
    for (double x : grid) {
      const auto [lo, hi] = bracket(p, x);
      table.values.push_back(sm(x));
      table.lower.push_back(lo);
      table.upper.push_back(hi);
      double err = table_err;
      if (x < sm.options().x_lo) err = origin_eval(origin, x).last_term_magnitude;
      if (x > sm.options().x_hi) err = infinity_eval(infinity, x).last_term_magnitude;
      table.est_error.push_back(err);
      table.clipped.push_back(0);
    }
  }
  if (m == "both") {
    const SlowManifoldTable bis = compute_bisection_table(p, grid, o.tol, cfg, o.threads);
    for (std::size_t i = 0; i < grid.size(); ++i) delta.push_back(std::abs(table.values[i] - bis.values[i]));
  }

  std::string method_name(to_string(table.method));
  std::transform(method_name.begin(), method_name.end(), method_name.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });

  return emit(o.common.out, out, [&](std::ostream& os) {
    if (o.common.format == "json") {
      Json j;
      j["eps"] = p.eps();
      j["method"] = method_name;
      Json rows = Json::array();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        Json r;
        r["x"] = grid[i];
        r["M"] = table.values[i];
        r["lower"] = table.lower[i];
        r["upper"] = table.upper[i];
        r["est_error"] = table.est_error[i];
        r["clipped"] = table.clipped[i] != 0;
        if (!delta.empty()) r["delta"] = delta[i];
        rows.push_back(std::move(r));
      }
      j["rows"] = std::move(rows);
      os << j.dump(2) << '\n';
    } else {
      std::vector<std::string> header{"x", "M", "lower", "upper", "est_error", "method"};
      if (!delta.empty()) header.push_back("delta");
      write_csv_row(os, header);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{format_double(grid[i]),         format_double(table.values[i]),
                                     format_double(table.lower[i]),  format_double(table.upper[i]),
                                     format_double(table.est_error[i]), method_name};
        if (!delta.empty()) row.push_back(format_double(delta[i]));
        write_csv_row(os, row);
      }
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_portrait(const PortraitOptions& o, std::ostream& out, std::ostream& err) {
  check_format(o.common.format);
  const Params p = o.common.params();
  IntegratorConfig cfg = o.common.integrator(1e-9, 1e-12);
  cfg.samples_per_decade = o.samples_per_decade;
  if (!(o.t_max > 0.0) || !std::isfinite(o.t_max)) throw UsageError("--t-max must be positive");

  std::vector<PhasePoint> inits;
  for (const std::string& s : o.inits) inits.push_back(parse_point(s));
  if (!o.inits_file.empty()) {
    const auto more = read_inits_file(o.inits_file);
    inits.insert(inits.end(), more.begin(), more.end());
  }
  if (inits.empty()) throw UsageError("no initial conditions given (use --init x,y or --inits FILE)");

  std::vector<EventKind> watch;
  for (const std::string& name : o.events) watch.push_back(event_kind_from_string(name));

  struct Run {
    Trajectory traj;
    std::string error;
  };
  const auto runs = parallel_map(inits.size(), o.threads, [&](std::size_t i) {
    Run r;
    try {
      r.traj = integrate_planar(p, inits[i], o.t_max, cfg, watch);
    } catch (const Error& e) {
      r.error = e.what();
    }
    return r;
  });

  std::size_t failures = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i].error.empty()) {
      ++failures;
      err << "trajectory " << i << ": " << runs[i].error << '\n';
    } else if (runs[i].traj.status != IntegrationStatus::Completed) {
      err << "trajectory " << i << ": stopped with " << to_string(runs[i].traj.status) << '\n';
    }
  }

  const auto write_events = [&](std::ostream& os) {
    write_csv_row(os, {"traj", "t", "kind", "x", "y"});
    for (std::size_t i = 0; i < runs.size(); ++i) {
      for (const Event& e : runs[i].traj.events) {
        write_csv_row(os, {std::to_string(i), format_double(e.t), std::string(to_string(e.kind)),
                           format_double(e.point.x), format_double(e.point.y)});
      }
    }
  };

  emit(o.common.out, out, [&](std::ostream& os) {
    if (o.common.format == "json") {
      Json j;
      j["eps"] = p.eps();
      Json list = Json::array();
      for (std::size_t i = 0; i < runs.size(); ++i) {
        const Run& r = runs[i];
        Json t;
        t["index"] = i;
        t["x0"] = inits[i].x;
        t["y0"] = inits[i].y;
        if (!r.error.empty()) {
          t["error"] = r.error;
        } else {
          t["status"] = std::string(to_string(r.traj.status));
          Json samples = Json::array();
          for (const TimeSample& s : r.traj.samples) samples.push_back(Json::array({s.t, s.x, s.y}));
          t["samples"] = std::move(samples);
          Json events = Json::array();
          for (const Event& e : r.traj.events) {
            events.push_back(
                Json{{"t", e.t}, {"kind", std::string(to_string(e.kind))}, {"x", e.point.x}, {"y", e.point.y}});
          }
          t["events"] = std::move(events);
        }
        list.push_back(std::move(t));
      }
      j["trajectories"] = std::move(list);
      os << j.dump(2) << '\n';
      return 0;
    }
    write_csv_row(os, {"traj", "t", "x", "y"});
    for (std::size_t i = 0; i < runs.size(); ++i) {
      for (const TimeSample& s : runs[i].traj.samples) {
        write_csv_row(os, {std::to_string(i), format_double(s.t), format_double(s.x), format_double(s.y)});
      }
    }
    if (o.events_out.empty()) {
      os << '\n';
      write_events(os);
    }
    return 0;
  });
  if (o.common.format == "csv" && !o.events_out.empty()) {
    emit(o.events_out, out, [&](std::ostream& os) {
      write_events(os);
      return 0;
    });
  }
  return failures == runs.size() ? kExitCheckFailed : kExitOk;
}

int cmd_series(const SeriesOptions& o, std::ostream& out) {
  check_format(o.common.format);
  const Params p = o.common.params();
  const bool origin = o.kind == "origin";
  if (!origin && o.kind != "infinity") throw UsageError("--kind must be origin or infinity");
  if (origin && o.order < 2) throw UsageError("origin series needs --order >= 2");
  if (!origin && o.order < -1) throw UsageError("infinity series needs --order >= -1");

  const int first = origin ? 2 : -1;
  std::vector<double> coeffs;
  if (origin) {
    const auto s = origin_coeffs(p, o.order);
    coeffs.assign(s.coefficients().begin(), s.coefficients().end());
  } else {
    const auto s = infinity_coeffs(p, o.order);
    coeffs.assign(s.coefficients().begin(), s.coefficients().end());
  }

  // Exact values as far as 64-bit rationals reach; later rows stay empty.
  std::vector<std::string> exact;
  if (o.exact) {
    Rational eps;
    try {
      eps = Rational::parse(format_double(p.eps()));
    } catch (const Error&) {
      throw UsageError("--exact needs eps with a short decimal form");
    }
    for (int order = o.order; order >= first && exact.empty(); --order) {
      try {
        const auto ex = origin ? origin_coeffs_exact(eps, order) : infinity_coeffs_exact(eps, order);
        for (const Rational& r : ex) exact.push_back(r.str());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidArgument) throw;
      }
    }
    exact.resize(coeffs.size());
  }

  return emit(o.common.out, out, [&](std::ostream& os) {
    if (o.common.format == "json") {
      Json j;
      j["kind"] = o.kind;
      j["eps"] = p.eps();
      Json rows = Json::array();
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Json r;
        r["n"] = first + static_cast<int>(k);
        r["coefficient"] = number_or_null(coeffs[k]);
        if (o.exact) r["exact"] = exact[k].empty() ? Json(nullptr) : Json(exact[k]);
        rows.push_back(std::move(r));
      }
      j["rows"] = std::move(rows);
      os << j.dump(2) << '\n';
    } else {
      write_csv_row(os, o.exact ? std::vector<std::string>{"n", "coefficient", "exact"}
                                : std::vector<std::string>{"n", "coefficient"});
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        std::vector<std::string> row{std::to_string(first + static_cast<int>(k)), format_double(coeffs[k])};
        if (o.exact) row.push_back(exact[k]);
        write_csv_row(os, row);
      }
    }
    return static_cast<int>(kExitOk);
  });
}

namespace {

Json report_json(const CheckReport& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["samples_tested"] = r.samples_tested;
  j["worst_violation"] = number_or_null(r.worst_violation);
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  Json details = Json::array();
  for (const SampleRecord& s : r.details) {
    Json d;
    d["index"] = s.index;
    if (!s.note.empty()) d["note"] = s.note;
    for (const auto& [key, value] : s.fields) d[key] = number_or_null(value);
    details.push_back(std::move(d));
  }
  j["details"] = std::move(details);
  return j;
}

}  // namespace

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  check_format(o.common.format);
  const Params p = o.common.params();
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  SuiteConfig sc;
  sc.eps = p.eps();
  sc.seed = o.common.seed;
  sc.threads = o.threads;
  sc.cfg = o.common.integrator(1e-9, 1e-12);
  sc.n_random = o.n_random;
  sc.n_table1 = o.n_table1;
  const std::vector<CheckReport> reports = run_suite(o.suite, sc);
  const bool all_passed = std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });

  emit(o.common.out, out, [&](std::ostream& os) {
    if (o.common.format == "csv") {
      write_csv_row(os, {"name", "passed", "samples_tested", "worst_violation", "tolerance", "seed"});
      for (const CheckReport& r : reports) {
        write_csv_row(os, {r.name, r.passed ? "true" : "false", std::to_string(r.samples_tested),
                           format_double(r.worst_violation), format_double(r.tolerance), std::to_string(r.seed)});
      }
      return 0;
    }
    Json j;
    j["suite"] = o.suite;
    j["eps"] = p.eps();
    j["seed"] = o.common.seed;
    j["passed"] = all_passed;
    Json list = Json::array();
    for (const CheckReport& r : reports) list.push_back(report_json(r));
    j["reports"] = std::move(list);
    os << j.dump(2) << '\n';
    return 0;
  });
  return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_nondim(const NondimOptions& o, std::ostream& out) {
  const Nondimensional nd = nondimensionalize(o.k1, o.km1, o.k2, o.a0, o.b0);
  Json j;
  j["eps"] = nd.params.eps();
  j["x0"] = nd.initial.x;
  j["y0"] = nd.initial.y;
  j["time_scale"] = nd.time_scale;
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace lindemann::cli
