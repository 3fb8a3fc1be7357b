#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lindemann/integrators.hpp"
#include "lindemann/kinetics.hpp"

namespace lindemann::cli {

/// Bad flag values detected after parsing; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::optional<double> eps;
  std::optional<double> k1, km1, k2;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 42;
  std::optional<double> rtol, atol;

  Params params() const;
  IntegratorConfig integrator(double rtol_default, double atol_default) const;
};

struct GridOptions {
  double xmin;
  double xmax;
  std::size_t n;
  bool log;

  std::vector<double> points() const;
};

struct IsoclineOptions {
  CommonOptions common;
  GridOptions grid{0.1, 10.0, 100, false};
  std::vector<double> slopes;
};

struct SlowManifoldOptions {
  CommonOptions common;
  GridOptions grid{1e-2, 1e2, 200, true};
  std::string method = "backward";
  double tol = 1e-9;
  unsigned threads = 1;
};

struct PortraitOptions {
  CommonOptions common;
  std::vector<std::string> inits;
  std::string inits_file;
  double t_max = 10.0;
  std::vector<std::string> events{"CrossH", "CrossY", "CrossAlpha", "CrossV"};
  std::string events_out;
  std::size_t samples_per_decade = 0;
  unsigned threads = 1;
};

struct SeriesOptions {
  CommonOptions common;
  std::string kind = "origin";
  int order = 10;
  bool exact = false;
};

struct VerifyOptions {
  CommonOptions common;
  std::string suite = "all";
  unsigned threads = 1;
  std::size_t n_random = 100;
  std::size_t n_table1 = 10000;
};

struct NondimOptions {
  double k1 = 0.0, km1 = 0.0, k2 = 0.0;
  double a0 = 0.0, b0 = 0.0;
};

int cmd_isoclines(const IsoclineOptions& o, std::ostream& out);
int cmd_slow_manifold(const SlowManifoldOptions& o, std::ostream& out);
int cmd_portrait(const PortraitOptions& o, std::ostream& out, std::ostream& err);
int cmd_series(const SeriesOptions& o, std::ostream& out);
int cmd_verify(const VerifyOptions& o, std::ostream& out);
int cmd_nondim(const NondimOptions& o, std::ostream& out);

}  // namespace lindemann::cli
