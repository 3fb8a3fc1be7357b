#include "lindemann/slow_manifold.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lindemann/error.hpp"
#include "lindemann/parallel.hpp"

namespace lindemann {

std::string_view to_string(ManifoldMethod method) noexcept {
  switch (method) {
    case ManifoldMethod::Backward: return "Backward";
    case ManifoldMethod::Bisection: return "Bisection";
    case ManifoldMethod::Blended: return "Blended";
  }
  return "Unknown";
}

std::string_view to_string(Side side) noexcept {
  switch (side) {
    case Side::Below: return "Below";
    case Side::Above: return "Above";
    case Side::Undecided: return "Undecided";
  }
  return "Unknown";
}

std::pair<double, double> bracket(const Params& p, double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::OutOfDomain, "bracket needs x > 0");
  return {inflection_curve(p, x), alpha_isocline(p, x)};
}

// Pulls v strictly inside (lo, hi) when a representable value exists there.
static double strictly_inside(double v, double lo, double hi) {
  if (v <= lo) v = std::nextafter(lo, hi);
  if (v >= hi) v = std::nextafter(hi, lo);
  return v;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw Error(ErrorCode::InvalidArgument, "log grid needs 0 < lo <= hi, n > 0");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_grid() { return log_grid(1e-2, 1e2, 200); }

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) throw Error(ErrorCode::OutOfDomain, "grid values must be > 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "grid must be strictly increasing");
  }
}

void raise_for(IntegrationStatus status, const std::string& where) {
  switch (status) {
    case IntegrationStatus::Completed: return;
    case IntegrationStatus::MaxSteps: throw Error(ErrorCode::MaxSteps, where + ": step budget exhausted");
    case IntegrationStatus::Diverged: throw Error(ErrorCode::Diverged, where + ": integration diverged");
    case IntegrationStatus::SingularityApproached:
      throw Error(ErrorCode::SingularityApproached, where + ": solution approached the vertical isocline");
    case IntegrationStatus::LeftQuadrant: throw Error(ErrorCode::OutOfDomain, where + ": solution left the quadrant");
  }
}

SlowManifoldTable empty_table(const Params& p, std::span<const double> grid, ManifoldMethod method) {
  SlowManifoldTable t;
  t.eps = p.eps();
  t.grid.assign(grid.begin(), grid.end());
  t.method = method;
  const std::size_t n = grid.size();
  t.values.resize(n);
  t.lower.resize(n);
  t.upper.resize(n);
  t.est_error.resize(n);
  t.clipped.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) std::tie(t.lower[i], t.upper[i]) = bracket(p, grid[i]);
  return t;
}

}  // namespace

SlowManifoldTable compute_backward(const Params& p, std::span<const double> grid, const IntegratorConfig& cfg,
                                   double start_fraction) {
  check_grid(grid);
  cfg.validate();
  if (!(start_fraction > 0.0 && start_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "start fraction must lie in (0, 1)");
  }
  const double e = p.eps();
  const double xs = grid.back() + std::max(10.0, 40.0 / (e * e));
  const double hs = horizontal_isocline(p, xs);
  const double width = alpha_isocline(p, xs) - hs;

  SlowManifoldTable t = empty_table(p, grid, ManifoldMethod::Backward);
  ScalarOptions options;
  options.x_min = std::min(options.x_min, grid.front());

  double x = xs;
  double y = hs + start_fraction * width;
  for (std::size_t i = grid.size(); i-- > 0;) {
    const ScalarCurve curve = integrate_scalar(p, x, y, grid[i], cfg, options);
    raise_for(curve.status, "backward sweep");
    x = grid[i];
    y = curve.back().y;

    const double est = width * std::exp(-e * e * (xs - x)) + 10.0 * cfg.rtol;
    t.est_error[i] = est;
    double v = y;
    if (!(v > t.lower[i]) || !(v < t.upper[i])) {
      const double excess = std::max(t.lower[i] - v, v - t.upper[i]);
      if (excess > est) {
        throw Error(ErrorCode::BracketViolation, "backward value at x = " + std::to_string(x) +
                                                     " leaves its bracket by " + std::to_string(excess));
      }
      v = strictly_inside(v, t.lower[i], t.upper[i]);
      t.clipped[i] = 1;
    }
    t.values[i] = v;
  }
  return t;
}

double default_span(const Params& p) noexcept { return std::max(5.0, 10.0 / p.eps()); }

Side classify_start(const Params& p, double x0, double y0, double span, const IntegratorConfig& cfg) {
  if (y0 <= horizontal_isocline(p, x0)) return Side::Below;
  if (y0 >= alpha_isocline(p, x0)) return Side::Above;
  ScalarOptions options;
  options.watch = {EventKind::CrossH, EventKind::CrossAlpha};
  options.stop_at_event = true;
  const ScalarCurve curve = integrate_scalar(p, x0, y0, x0 + span, cfg, options);
  if (!curve.events.empty()) return curve.events.front().kind == EventKind::CrossH ? Side::Below : Side::Above;
  switch (curve.status) {
    case IntegrationStatus::Completed: return Side::Undecided;
    case IntegrationStatus::MaxSteps: throw Error(ErrorCode::Undecided, "classification ran out of steps");
    case IntegrationStatus::SingularityApproached: return Side::Above;
    case IntegrationStatus::LeftQuadrant: return Side::Below;
    case IntegrationStatus::Diverged: break;
  }
  throw Error(ErrorCode::Diverged, "classification run diverged");
}

double compute_bisection(const Params& p, double x0, double tol, const IntegratorConfig& cfg) {
  if (!(x0 > 0.0)) throw Error(ErrorCode::OutOfDomain, "bisection needs x0 > 0");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "bisection needs tol > 0");
  cfg.validate();
  auto [lo, hi] = bracket(p, x0);
  const double base_span = default_span(p);
  constexpr int max_doublings = 4;

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    Side side = Side::Undecided;
    double span = base_span;
    for (int d = 0; d <= max_doublings && side == Side::Undecided; ++d, span *= 2.0) {
      side = classify_start(p, x0, mid, span, cfg);
    }
    switch (side) {
      case Side::Below: lo = mid; break;
      case Side::Above: hi = mid; break;
      case Side::Undecided:
        lo = 0.5 * (lo + mid);
        hi = 0.5 * (mid + hi);
        break;
    }
  }
  return 0.5 * (lo + hi);
}

SlowManifoldTable compute_bisection_table(const Params& p, std::span<const double> grid, double tol,
                                          const IntegratorConfig& cfg, unsigned threads) {
  check_grid(grid);
  SlowManifoldTable t = empty_table(p, grid, ManifoldMethod::Bisection);
  t.values = parallel_map(grid.size(), threads, [&](std::size_t i) { return compute_bisection(p, grid[i], tol, cfg); });
  for (std::size_t i = 0; i < grid.size(); ++i) t.est_error[i] = 0.5 * tol + 10.0 * cfg.rtol;
  return t;
}

SlowManifold::SlowManifold(const Params& p, SlowManifoldTable table, OriginSeries origin, InfinitySeries infinity,
                           const BlendOptions& options)
    : params_(p), table_(std::move(table)), origin_(std::move(origin)), infinity_(std::move(infinity)),
      options_(options) {
  const auto n = table_.size();
  if (n < 2 || table_.values.size() != n) throw Error(ErrorCode::InvalidArgument, "blend needs a table of >= 2 points");
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
  if (!close(table_.grid.front(), options_.x_lo) || !close(table_.grid.back(), options_.x_hi)) {
    throw Error(ErrorCode::InvalidArgument, "table grid must span [x_lo, x_hi]");
  }
  table_.method = ManifoldMethod::Blended;

  // Exact slopes from the field, limited (Fritsch-Carlson) so that each
  // Hermite piece stays monotone.
  const auto& x = table_.grid;
  const auto& y = table_.values;
  slopes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) slopes_[i] = scalar_slope(params_, {x[i], y[i]});
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double d = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    if (d == 0.0) {
      slopes_[k] = slopes_[k + 1] = 0.0;
      continue;
    }
    double a = slopes_[k] / d, b = slopes_[k + 1] / d;
    if (a < 0.0) slopes_[k] = a = 0.0;
    if (b < 0.0) slopes_[k + 1] = b = 0.0;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double s = 3.0 / std::sqrt(r);
      slopes_[k] = s * a * d;
      slopes_[k + 1] = s * b * d;
    }
  }

  seam_.first = std::abs(origin_eval(origin_, options_.x_lo).value - y.front());
  seam_.second = std::abs(infinity_eval(infinity_, options_.x_hi).value - y.back());
  if (!(seam_.first <= options_.seam_tol) || !(seam_.second <= options_.seam_tol)) {
    throw Error(ErrorCode::SeamMismatch, "series and table disagree at a seam: " + std::to_string(seam_.first) +
                                             " at x_lo, " + std::to_string(seam_.second) + " at x_hi");
  }
}

SlowManifold SlowManifold::build(const Params& p, const IntegratorConfig& cfg, const BlendOptions& options) {
  const double decades = std::log10(options.x_hi / options.x_lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(options.points_per_decade))) + 1;
  const std::vector<double> grid = log_grid(options.x_lo, options.x_hi, std::max<std::size_t>(n, 2));
  return SlowManifold(p, compute_backward(p, grid, cfg), origin_coeffs(p, options.origin_order),
                      infinity_coeffs(p, options.infinity_order), options);
}

double SlowManifold::operator()(double x) const {
  if (!(x > 0.0)) throw Error(ErrorCode::OutOfDomain, "slow manifold is evaluated for x > 0");
  double v;
  if (x < options_.x_lo) {
    v = origin_eval(origin_, x).value;
  } else if (x > options_.x_hi) {
    v = infinity_eval(infinity_, x).value;
  } else {
    v = interpolate(x);
  }
  const auto [lo, hi] = bracket(params_, x);
  return strictly_inside(v, lo, hi);
}

double SlowManifold::interpolate(double x) const {
  const auto& g = table_.grid;
  const auto& v = table_.values;
  auto it = std::upper_bound(g.begin(), g.end(), x);
  std::size_t k = it == g.begin() ? 0 : static_cast<std::size_t>(it - g.begin()) - 1;
  if (k + 1 >= g.size()) return v.back();
  const double h = g[k + 1] - g[k];
  const double s = (x - g[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  return h00 * v[k] + h10 * h * slopes_[k] + h01 * v[k + 1] + h11 * h * slopes_[k + 1];
}

double evaluate(const Params& p, double x, const SlowManifoldTable& table, const OriginSeries& origin,
                const InfinitySeries& infinity) {
  if (table.size() < 2) throw Error(ErrorCode::InvalidArgument, "evaluate needs a table of >= 2 points");
  BlendOptions options;
  options.x_lo = table.grid.front();
  options.x_hi = table.grid.back();
  return SlowManifold(p, table, origin, infinity, options)(x);
}

}  // namespace lindemann
