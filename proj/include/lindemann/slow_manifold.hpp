#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lindemann/integrators.hpp"
#include "lindemann/kinetics.hpp"
#include "lindemann/series.hpp"

namespace lindemann {

enum class ManifoldMethod { Backward, Bisection, Blended };

std::string_view to_string(ManifoldMethod method) noexcept;

/// Grid values of the slow manifold M together with the brackets Y < M < alpha.
struct SlowManifoldTable {
  double eps = 0.0;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> est_error;
  /// 1 where the raw value fell outside its bracket and was clipped.
  std::vector<std::uint8_t> clipped;
  ManifoldMethod method = ManifoldMethod::Backward;

  std::size_t size() const noexcept { return grid.size(); }
};

/// (Y(x), alpha(x)) for x > 0.
std::pair<double, double> bracket(const Params& p, double x);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// 200 log-spaced points on [1e-2, 1e2].
std::vector<double> default_grid();

/// Shoots the scalar equation backward from X_s = max(grid) + max(10, 40/eps^2),
/// where solutions contract onto M. The start height is
/// H + start_fraction (alpha - H) at X_s.
SlowManifoldTable compute_backward(const Params& p, std::span<const double> grid, const IntegratorConfig& cfg,
                                   double start_fraction = 0.5);

enum class Side { Below, Above, Undecided };

std::string_view to_string(Side side) noexcept;

/// Forward classification of the solution through (x0, y0): leaving through H
/// means it started below M, leaving through alpha means above.
Side classify_start(const Params& p, double x0, double y0, double span, const IntegratorConfig& cfg);

/// Default forward span max(5, 10/eps).
double default_span(const Params& p) noexcept;

/// Bisection on y0 in [Y(x0), alpha(x0)] until the interval is below tol.
/// Throws Undecided if the integrator runs out of steps on the final interval.
double compute_bisection(const Params& p, double x0, double tol, const IntegratorConfig& cfg);

/// compute_bisection at every grid point, fanned out over `threads` workers.
SlowManifoldTable compute_bisection_table(const Params& p, std::span<const double> grid, double tol,
                                          const IntegratorConfig& cfg, unsigned threads = 1);

struct BlendOptions {
  double x_lo = 1e-2;
  double x_hi = 1e2;
  int origin_order = 40;
  int infinity_order = 20;
  double seam_tol = 1e-6;
  std::size_t points_per_decade = 100;
};

/// M on all of x > 0: origin series below x_lo, monotone cubic Hermite
/// through the table on [x_lo, x_hi], infinity series above x_hi.
class SlowManifold {
 public:
  /// The table must start at x_lo and end at x_hi. Throws SeamMismatch if a
  /// series and the table disagree by more than seam_tol at a seam.
  SlowManifold(const Params& p, SlowManifoldTable table, OriginSeries origin, InfinitySeries infinity,
               const BlendOptions& options = {});

  /// Builds the table by backward shooting on a grid with
  /// options.points_per_decade points per decade.
  static SlowManifold build(const Params& p, const IntegratorConfig& cfg, const BlendOptions& options = {});

  double operator()(double x) const;

  const SlowManifoldTable& table() const noexcept { return table_; }
  const BlendOptions& options() const noexcept { return options_; }
  /// |series - table| at the lower and upper seams.
  std::pair<double, double> seam_mismatch() const noexcept { return seam_; }

 private:
  double interpolate(double x) const;

  Params params_;
  SlowManifoldTable table_;
  OriginSeries origin_;
  InfinitySeries infinity_;
  BlendOptions options_;
  std::vector<double> slopes_;
  std::pair<double, double> seam_{0.0, 0.0};
};

/// One-shot evaluation with an explicit table and series. x_lo and x_hi are
/// the ends of the table grid.
double evaluate(const Params& p, double x, const SlowManifoldTable& table, const OriginSeries& origin,
                const InfinitySeries& infinity);

}  // namespace lindemann
