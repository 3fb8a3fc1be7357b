#include "lindemann/cli.hpp"

#include <algorithm>
#include <fstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "lindemann/error.hpp"
#include "lindemann/format.hpp"

namespace lindemann {

namespace {

using cli::CommonOptions;
using cli::GridOptions;
using cli::UsageError;

void add_common(CLI::App* app, CommonOptions& c) {
  app->add_option("--eps", c.eps, "Dimensionless parameter eps = km1/k1 (> 0)");
  app->add_option("--k1", c.k1, "Forward activation rate constant (instead of --eps)");
  app->add_option("--km1", c.km1, "Deactivation rate constant (instead of --eps)");
  app->add_option("--k2", c.k2, "Reaction rate constant (instead of --eps)");
  app->add_option("--out", c.out, "Write output to PATH instead of stdout");
  app->add_option("--format", c.format, "Output format: csv or json")->capture_default_str();
  app->add_option("--seed", c.seed, "Seed for random sampling")->capture_default_str();
  app->add_option("--rtol", c.rtol, "Relative integration tolerance");
  app->add_option("--atol", c.atol, "Absolute integration tolerance");
}

void add_grid(CLI::App* app, GridOptions& g) {
  app->add_option("--xmin", g.xmin, "Smallest x of the grid")->capture_default_str();
  app->add_option("--xmax", g.xmax, "Largest x of the grid")->capture_default_str();
  app->add_option("--n", g.n, "Number of grid points")->capture_default_str();
  app->add_flag("--log,!--linear", g.log, "Log-spaced grid")->capture_default_str();
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || (a.size() > flag.size() && a.compare(0, flag.size() + 1, flag + "=") == 0);
  });
}

std::string config_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return format_double(v.get<double>());
  throw UsageError("config values must be strings, numbers, booleans or arrays of those");
}

// Removes --config PATH from the arguments and appends every key of the JSON
// object that was not already given on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");

  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& item : value) {
        extra.push_back(flag);
        extra.push_back(config_scalar(item));
      }
    } else {
      extra.push_back(flag);
      extra.push_back(config_scalar(value));
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::DenominatorZero:
    case ErrorCode::PoleAtX:
    case ErrorCode::PoleAtMinusOne:
    case ErrorCode::OutOfDomain:
    case ErrorCode::NonpositiveRate: return kExitUsage;
    default: return kExitInternal;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-plane toolkit for the Lindemann mechanism: isoclines, slow manifold, series, portraits and "
               "verification suites.",
               "lindemann"};
  app.require_subcommand(1);

  cli::IsoclineOptions iso;
  auto* c_iso = app.add_subcommand("isoclines", "Tabulate H, V, alpha and isoclines F(x, c) on an x grid");
  add_common(c_iso, iso.common);
  add_grid(c_iso, iso.grid);
  c_iso->add_option("--slopes", iso.slopes, "Slope values c for extra F(x, c) columns")->delimiter(',');

  cli::SlowManifoldOptions sm;
  auto* c_sm = app.add_subcommand("slow-manifold", "Compute the slow manifold with its brackets");
  add_common(c_sm, sm.common);
  add_grid(c_sm, sm.grid);
  c_sm->add_option("--method", sm.method, "backward, bisection, both or blended")->capture_default_str();
  c_sm->add_option("--tol", sm.tol, "Bisection interval tolerance")->capture_default_str();
  c_sm->add_option("--threads", sm.threads, "Worker threads for bisection columns")->capture_default_str();

  cli::PortraitOptions pt;
  auto* c_pt = app.add_subcommand("portrait", "Integrate trajectories of the planar system");
  add_common(c_pt, pt.common);
  c_pt->add_option("--init", pt.inits, "Initial condition x,y (repeatable)");
  c_pt->add_option("--inits", pt.inits_file, "File with one x,y initial condition per line");
  c_pt->add_option("--t-max", pt.t_max, "Final time")->capture_default_str();
  c_pt->add_option("--events", pt.events, "Curves to watch: CrossH, CrossY, CrossAlpha, CrossV, ReachTarget")
      ->delimiter(',')
      ->capture_default_str();
  c_pt->add_option("--events-out", pt.events_out,
                   "Write the events CSV to PATH (default: after a blank line in the main output)");
  c_pt->add_option("--samples-per-decade", pt.samples_per_decade, "Thin stored samples (0 keeps all)")
      ->capture_default_str();
  c_pt->add_option("--threads", pt.threads, "Worker threads")->capture_default_str();

  cli::SeriesOptions se;
  auto* c_se = app.add_subcommand("series", "Print series coefficients of the slow manifold");
  add_common(c_se, se.common);
  c_se->add_option("--kind", se.kind, "origin or infinity")->capture_default_str();
  c_se->add_option("--order", se.order, "Highest coefficient index")->capture_default_str();
  c_se->add_flag("--exact", se.exact, "Add exact rational values");

  cli::VerifyOptions ve;
  ve.common.format = "json";
  auto* c_ve = app.add_subcommand("verify", "Run verification suites and write a report");
  add_common(c_ve, ve.common);
  c_ve->add_option("--suite", ve.suite, "all, concavity, fences, trapping, attraction, longtime or table1")
      ->capture_default_str();
  c_ve->add_option("--threads", ve.threads, "Worker threads (does not affect the report)")->capture_default_str();
  c_ve->add_option("--samples", ve.n_random, "Random initial conditions for trapping and attraction")
      ->capture_default_str();
  c_ve->add_option("--table1-samples", ve.n_table1, "Points per band for the table1 scan")->capture_default_str();

  cli::NondimOptions nd;
  auto* c_nd = app.add_subcommand("nondim", "Map rate constants and concentrations to eps, x0, y0");
  c_nd->add_option("--k1", nd.k1, "Activation rate constant")->required();
  c_nd->add_option("--km1", nd.km1, "Deactivation rate constant")->required();
  c_nd->add_option("--k2", nd.k2, "Reaction rate constant")->required();
  c_nd->add_option("--a0", nd.a0, "Initial concentration of A")->capture_default_str();
  c_nd->add_option("--b0", nd.b0, "Initial concentration of B")->capture_default_str();

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (c_iso->parsed()) return cli::cmd_isoclines(iso, out);
    if (c_sm->parsed()) return cli::cmd_slow_manifold(sm, out);
    if (c_pt->parsed()) return cli::cmd_portrait(pt, out, err);
    if (c_se->parsed()) return cli::cmd_series(se, out);
    if (c_ve->parsed()) return cli::cmd_verify(ve, out);
    if (c_nd->parsed()) return cli::cmd_nondim(nd, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  err << "error: no command given\n";
  return kExitUsage;
}

}  // namespace lindemann
