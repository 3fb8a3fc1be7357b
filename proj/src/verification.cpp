#include "lindemann/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "lindemann/error.hpp"
#include "lindemann/parallel.hpp"

namespace lindemann {

double SampleRng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::string_view to_string(ConcavityVerdict verdict) noexcept {
  switch (verdict) {
    case ConcavityVerdict::ConcaveUp: return "ConcaveUp";
    case ConcavityVerdict::ConcaveDown: return "ConcaveDown";
    case ConcavityVerdict::Inflection: return "Inflection";
    case ConcavityVerdict::UndefinedOnV: return "UndefinedOnV";
  }
  return "Unknown";
}

std::string_view to_string(FenceClass fc) noexcept {
  switch (fc) {
    case FenceClass::StrongLowerFence: return "StrongLowerFence";
    case FenceClass::StrongUpperFence: return "StrongUpperFence";
    case FenceClass::Neutral: return "Neutral";
  }
  return "Unknown";
}

std::string_view to_string(ConcavityBand band) noexcept {
  switch (band) {
    case ConcavityBand::BelowH: return "BelowH";
    case ConcavityBand::HToY: return "HToY";
    case ConcavityBand::YToM: return "YToM";
    case ConcavityBand::MToAlpha: return "MToAlpha";
    case ConcavityBand::AlphaToV: return "AlphaToV";
    case ConcavityBand::VToUpperRoot: return "VToUpperRoot";
    case ConcavityBand::AboveUpperRoot: return "AboveUpperRoot";
  }
  return "Unknown";
}

int expected_h_sign(ConcavityBand band) noexcept {
  switch (band) {
    case ConcavityBand::BelowH:
    case ConcavityBand::HToY:
    case ConcavityBand::VToUpperRoot: return -1;
    case ConcavityBand::YToM:
    case ConcavityBand::MToAlpha:
    case ConcavityBand::AlphaToV:
    case ConcavityBand::AboveUpperRoot: return 1;
  }
  return 0;
}

ConcavityVerdict concavity_at(const Params& p, PhasePoint pt, double band) {
  if (!(pt.x > 0.0)) throw Error(ErrorCode::OutOfDomain, "concavity is classified for x > 0");
  if (std::abs(pt.y - vertical_isocline(p, pt.x)) <= band) return ConcavityVerdict::UndefinedOnV;
  const double h = h_aux(p, pt);
  if (std::abs(h) <= band) return ConcavityVerdict::Inflection;
  return h > 0.0 ? ConcavityVerdict::ConcaveUp : ConcavityVerdict::ConcaveDown;
}

FenceClass fence_classify(const Params& p, SlopeValue c, double x, double band) {
  if (!(c.c > 0.0) || !(c.c < 1.0 / p.eps())) throw Error(ErrorCode::OutOfDomain, "fence slope must lie in (0, 1/eps)");
  const double diff = isocline_derivative(p, c, x) - c.c;
  if (std::abs(diff) <= band) return FenceClass::Neutral;
  return diff < 0.0 ? FenceClass::StrongLowerFence : FenceClass::StrongUpperFence;
}

double fence_switch(const Params& p, SlopeValue c, double band) {
  double lo = 1.0, hi = 1.0;
  while (fence_classify(p, c, hi, band) == FenceClass::StrongLowerFence) hi *= 2.0;
  while (fence_classify(p, c, lo, band) != FenceClass::StrongLowerFence) lo *= 0.5;
  if (fence_classify(p, c, hi, band) == FenceClass::Neutral) return hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    switch (fence_classify(p, c, mid, band)) {
      case FenceClass::Neutral: return mid;
      case FenceClass::StrongLowerFence: lo = mid; break;
      case FenceClass::StrongUpperFence: hi = mid; break;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<PhasePoint> random_inits(std::uint64_t seed, std::size_t n, double side) {
  SampleRng rng(seed);
  std::vector<PhasePoint> out(n);
  // 1 - u lies in (0, 1], so every coordinate is strictly positive.
  for (auto& pt : out) {
    pt.x = side * (1.0 - rng.uniform());
    pt.y = side * (1.0 - rng.uniform());
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, 3> kRegionNames{"G0", "G1", "G2"};

struct TrappingResult {
  std::array<double, 3> entry{-1.0, -1.0, -1.0};
  double violation = 0.0;
  std::string note;
  std::size_t steps = 0;
};

TrappingResult trap_one(const Params& p, PhasePoint init, const IntegratorConfig& cfg, const TrappingOptions& opt) {
  TrappingResult r;
  const Trajectory traj = integrate_planar(p, init, opt.t_max, cfg);
  r.steps = traj.steps;
  if (traj.status != IntegrationStatus::Completed) {
    r.violation = 1.0;
    r.note = "integration ended with " + std::string(to_string(traj.status));
  }
  const double b = opt.band_atol * cfg.atol;
  std::array<double, 3> worst_exit{0.0, 0.0, 0.0};
  for (const TimeSample& s : traj.samples) {
    if (!(s.x > 0.0)) continue;
    const double h = horizontal_isocline(p, s.x);
    const double v = vertical_isocline(p, s.x);
    const double a = alpha_isocline(p, s.x);
    const bool need_y = r.entry[2] >= 0.0 || (s.y >= h - b && s.y <= a + b);
    const double yc = need_y ? inflection_curve(p, s.x) : h;
    const std::array<std::pair<double, double>, 3> bounds{{{h, v}, {h, a}, {yc, a}}};
    for (std::size_t k = 0; k < 3; ++k) {
      const double excess = std::max(bounds[k].first - b - s.y, s.y - bounds[k].second - b);
      if (r.entry[k] < 0.0) {
        if (excess <= 0.0) r.entry[k] = s.t;
      } else if (excess > 0.0) {
        worst_exit[k] = std::max(worst_exit[k], excess);
      }
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    if (r.entry[k] < 0.0) {
      r.violation = std::max(r.violation, 1.0);
      r.note += (r.note.empty() ? "" : "; ") + std::string("never entered ") + std::string(kRegionNames[k]);
    } else if (worst_exit[k] > 0.0) {
      r.violation = std::max(r.violation, worst_exit[k]);
      r.note += (r.note.empty() ? "" : "; ") + std::string("left ") + std::string(kRegionNames[k]);
    }
  }
  if (r.entry[0] >= 0.0 && r.entry[1] >= 0.0 && r.entry[2] >= 0.0) {
    const double disorder = std::max(r.entry[0] - r.entry[1], r.entry[1] - r.entry[2]);
    if (disorder > 0.0) {
      r.violation = std::max(r.violation, disorder);
      r.note += (r.note.empty() ? "" : "; ") + std::string("entry times out of order");
    }
  }
  return r;
}

}  // namespace

CheckReport trapping_suite(const Params& p, std::span<const PhasePoint> inits, const IntegratorConfig& cfg,
                           const TrappingOptions& options) {
  for (const PhasePoint& pt : inits) {
    if (!(pt.x > 0.0) || !(pt.y >= 0.0)) throw Error(ErrorCode::OutOfDomain, "trapping inits need x > 0, y >= 0");
  }
  IntegratorConfig run = cfg;
  run.samples_per_decade = 0;
  const auto results =
      parallel_map(inits.size(), options.threads, [&](std::size_t i) { return trap_one(p, inits[i], run, options); });

  CheckReport rep;
  rep.name = "trapping";
  rep.samples_tested = inits.size();
  rep.tolerance = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const TrappingResult& r = results[i];
    rep.worst_violation = std::max(rep.worst_violation, r.violation);
    rep.details.push_back({i, r.note,
                           {{"x0", inits[i].x},
                            {"y0", inits[i].y},
                            {"t_G0", r.entry[0]},
                            {"t_G1", r.entry[1]},
                            {"t_G2", r.entry[2]},
                            {"violation", r.violation}}});
  }
  rep.finalize();
  return rep;
}

CheckReport attraction_suite(const Params& p, std::span<const PhasePoint> inits, const IntegratorConfig& cfg,
                             double t_end, unsigned threads) {
  IntegratorConfig run = cfg;
  run.samples_per_decade = 1;
  const double envelope = 2.0 * (1.0 + p.eps()) / t_end;
  const double negligible = std::exp(-100.0);
  struct Outcome {
    double x, y, ratio;
    IntegrationStatus status;
  };
  const auto results = parallel_map(inits.size(), threads, [&](std::size_t i) {
    const Trajectory traj = integrate_planar(p, inits[i], t_end, run);
    const TimeSample& last = traj.samples.back();
    double norm = std::hypot(last.x, last.y);
    if (norm < negligible) norm = 0.0;
    return Outcome{last.x, last.y, norm / envelope, traj.status};
  });

  CheckReport rep;
  rep.name = "attraction";
  rep.samples_tested = inits.size();
  rep.tolerance = 1.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Outcome& o = results[i];
    double v = o.ratio;
    std::string note;
    if (o.status != IntegrationStatus::Completed) {
      v = std::max(v, 2.0);
      note = "integration ended with " + std::string(to_string(o.status));
    }
    rep.worst_violation = std::max(rep.worst_violation, v);
    rep.details.push_back({i, note, {{"x0", inits[i].x}, {"y0", inits[i].y}, {"x", o.x}, {"y", o.y}, {"ratio", v}}});
  }
  rep.finalize();
  return rep;
}

IntegratorConfig longtime_config(double rtol) {
  IntegratorConfig cfg;
  cfg.rtol = rtol;
  cfg.atol = 1e-22;
  cfg.samples_per_decade = 1;
  return cfg;
}

LongtimeProfile longtime_profile(const Params& p, PhasePoint init, const IntegratorConfig& cfg, double t_end,
                                 std::size_t per_decade) {
  if (!(init.x > 0.0) || !(init.y >= 0.0)) throw Error(ErrorCode::OutOfDomain, "long-time runs need x0 > 0, y0 >= 0");
  if (!(t_end > 10.0) || per_decade == 0) throw Error(ErrorCode::InvalidArgument, "need t_end > 10, per_decade > 0");
  const double e = p.eps();

  std::vector<double> marks;
  for (std::size_t k = 0;; ++k) {
    const double t = std::pow(10.0, 1.0 + static_cast<double>(k) / static_cast<double>(per_decade));
    if (t >= t_end * (1.0 - 1e-12)) break;
    marks.push_back(t);
  }
  marks.push_back(t_end);

  // Quadratures of y and y/x by the trapezoid rule with the endpoint
  // derivative correction, exact for cubics.
  const auto ratio = [](double x, double y) { return y / x; };
  const auto ratio_dot = [](double x, double y, double dx, double dy) { return (dy * x - y * dx) / (x * x); };
  const auto hermite_trap = [](double h, double f0, double f1, double d0, double d1) {
    return 0.5 * h * (f0 + f1) + h * h / 12.0 * (d0 - d1);
  };

  LongtimeProfile prof;
  double int_y = 0.0, int_q = 0.0;
  std::size_t next = 0;
  const PlanarObserver observer = [&](const PlanarStep& s) {
    const double h = s.t1 - s.t0;
    const auto& [x0, y0] = s.state0;
    const auto& [dx0, dy0] = s.rate0;
    while (next < marks.size() && marks[next] <= s.t1) {
      const double tc = marks[next];
      const double hc = tc - s.t0;
      const double th = hc / h;
      const double h00 = (1 + 2 * th) * (1 - th) * (1 - th), h10 = th * (1 - th) * (1 - th);
      const double h01 = th * th * (3 - 2 * th), h11 = th * th * (th - 1);
      std::array<double, 2> st;
      for (std::size_t i = 0; i < 2; ++i) {
        st[i] = h00 * s.state0[i] + h10 * h * s.rate0[i] + h01 * s.state1[i] + h11 * h * s.rate1[i];
      }
      const Velocity vc = vector_field(p, {st[0], st[1]});
      const double iy = int_y + hermite_trap(hc, y0, st[1], dy0, vc.dy);
      const double iq = int_q + hermite_trap(hc, ratio(x0, y0), ratio(st[0], st[1]), ratio_dot(x0, y0, dx0, dy0),
                                             ratio_dot(st[0], st[1], vc.dx, vc.dy));
      const double lt = std::log(tc);
      LongtimeCheckpoint cp;
      cp.t = tc;
      cp.x = st[0];
      cp.y = st[1];
      cp.r_x = (st[0] - 1.0 / tc) * tc * tc / lt;
      cp.r_y = (st[1] - 1.0 / (tc * tc)) * tc * tc * tc / (2.0 * e * lt);
      cp.residual = std::abs(1.0 / st[0] - 1.0 / init.x - tc + e * iq);
      cp.integral_y = iy;
      prof.checkpoints.push_back(cp);
      ++next;
    }
    const auto& [x1, y1] = s.state1;
    const auto& [dx1, dy1] = s.rate1;
    int_y += hermite_trap(h, y0, y1, dy0, dy1);
    int_q += hermite_trap(h, ratio(x0, y0), ratio(x1, y1), ratio_dot(x0, y0, dx0, dy0), ratio_dot(x1, y1, dx1, dy1));
  };

  const Trajectory traj = integrate_planar(p, init, t_end, cfg, {}, observer);
  prof.status = traj.status;
  prof.steps = traj.steps;
  return prof;
}

CheckReport longtime_suite(const Params& p, PhasePoint init, const IntegratorConfig& cfg, double t_end,
                           const LongtimeTolerances& tol) {
  const LongtimeProfile prof = longtime_profile(p, init, cfg, t_end);
  CheckReport rep;
  rep.name = "longtime";
  rep.tolerance = 1.0;
  rep.samples_tested = prof.checkpoints.size();
  if (prof.status != IntegrationStatus::Completed || prof.checkpoints.empty()) {
    rep.worst_violation = 2.0;
    rep.details.push_back({0, "integration ended with " + std::string(to_string(prof.status)), {}});
    rep.finalize();
    return rep;
  }
  for (std::size_t i = 0; i < prof.checkpoints.size(); ++i) {
    const LongtimeCheckpoint& cp = prof.checkpoints[i];
    const double v = cp.residual / (tol.residual * cp.t);
    rep.worst_violation = std::max(rep.worst_violation, v);
    rep.details.push_back({i,
                           "",
                           {{"t", cp.t},
                            {"x", cp.x},
                            {"y", cp.y},
                            {"r_x", cp.r_x},
                            {"r_y", cp.r_y},
                            {"residual", cp.residual},
                            {"residual_violation", v}}});
  }
  const LongtimeCheckpoint& last = prof.checkpoints.back();
  const double vx = std::abs(last.r_x - p.eps()) / tol.r_x;
  const double vy = std::abs(last.r_y - 1.0) / tol.r_y;
  rep.worst_violation = std::max({rep.worst_violation, vx, vy});
  rep.details.push_back({prof.checkpoints.size(), "final rates", {{"r_x_violation", vx}, {"r_y_violation", vy}}});
  rep.finalize();
  return rep;
}

CheckReport table1_scan(const Params& p, const SlowManifold& manifold, std::size_t n_per_region, std::uint64_t seed,
                        double x_lo, double x_hi) {
  if (n_per_region == 0) throw Error(ErrorCode::InvalidArgument, "n_per_region must be >= 1");
  constexpr std::array bands{ConcavityBand::BelowH,   ConcavityBand::HToY,         ConcavityBand::YToM,
                             ConcavityBand::MToAlpha, ConcavityBand::AlphaToV,     ConcavityBand::VToUpperRoot,
                             ConcavityBand::AboveUpperRoot};
  SampleRng rng(seed);
  CheckReport rep;
  rep.name = "table1";
  rep.seed = seed;
  rep.tolerance = 0.0;
  std::size_t misses = 0;
  for (const ConcavityBand band : bands) {
    for (std::size_t i = 0; i < n_per_region; ++i) {
      const double x = rng.log_uniform(x_lo, x_hi);
      const double u = 1e-3 + 0.998 * rng.uniform();
      const double h = horizontal_isocline(p, x);
      const double v = vertical_isocline(p, x);
      double lo = 0.0, hi = 0.0;
      switch (band) {
        case ConcavityBand::BelowH: lo = 0.0, hi = h; break;
        case ConcavityBand::HToY: lo = h, hi = inflection_curve(p, x); break;
        case ConcavityBand::YToM: lo = inflection_curve(p, x), hi = manifold(x); break;
        case ConcavityBand::MToAlpha: lo = manifold(x), hi = alpha_isocline(p, x); break;
        case ConcavityBand::AlphaToV: lo = alpha_isocline(p, x), hi = v; break;
        case ConcavityBand::VToUpperRoot: lo = v, hi = inflection_cubic_roots(p, x).back(); break;
        case ConcavityBand::AboveUpperRoot: lo = inflection_cubic_roots(p, x).back(), hi = 2.0 * lo; break;
      }
      const double y = lo + u * (hi - lo);
      const double hv = h_aux(p, {x, y});
      ++rep.samples_tested;
      if ((hv > 0.0 ? 1 : -1) != expected_h_sign(band) || hv == 0.0) {
        ++misses;
        if (rep.details.size() < 20) {
          rep.details.push_back({rep.samples_tested - 1, std::string(to_string(band)), {{"x", x}, {"y", y}, {"h", hv}}});
        }
      }
    }
  }
  rep.worst_violation = static_cast<double>(misses);
  rep.finalize();
  return rep;
}

std::vector<CheckReport> concavity_suite(const Params& p, std::size_t n, std::uint64_t seed) {
  SampleRng rng(seed);
  CheckReport fd;
  fd.name = "concavity";
  fd.seed = seed;
  fd.tolerance = 1e-5;
  CheckReport slopes;
  slopes.name = "slope_bounds";
  slopes.seed = seed;
  slopes.tolerance = 0.0;
  std::size_t slope_misses = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.log_uniform(1e-2, 1e2);
    const double v = vertical_isocline(p, x);
    // Stay at least 5% of V away from the pole of the slope field.
    double y = 3.0 * v * rng.uniform();
    if (std::abs(y - v) < 0.05 * v) y = y < v ? 0.95 * v : 1.05 * v;
    if (y <= 0.0) y = 0.5 * horizontal_isocline(p, x);
    const PhasePoint pt{x, y};

    const double exact = p_aux(p, pt) * h_aux(p, pt);
    const double f0 = scalar_slope(p, pt);
    // Central differences along the tangent line, one Richardson step.
    const double d = 1e-3 * std::min(x, std::abs(y - v) / (1.0 + std::abs(f0)));
    const auto central = [&](double step) {
      return (scalar_slope(p, {x + step, y + step * f0}) - scalar_slope(p, {x - step, y - step * f0})) / (2.0 * step);
    };
    const double fd_val = (4.0 * central(0.5 * d) - central(d)) / 3.0;
    const double scale = std::max(std::abs(exact), std::abs(f0) / x);
    const double rel = std::abs(fd_val - exact) / scale;
    const ConcavityVerdict verdict = concavity_at(p, pt);
    const bool sign_ok = verdict == ConcavityVerdict::Inflection || std::abs(exact) < 1e-3 * scale ||
                         (fd_val > 0.0) == (verdict == ConcavityVerdict::ConcaveUp);
    const double viol = sign_ok ? rel : std::max(rel, 1.0);
    fd.worst_violation = std::max(fd.worst_violation, viol);
    ++fd.samples_tested;
    if (viol > fd.tolerance && fd.details.size() < 20) {
      fd.details.push_back({i, std::string(to_string(verdict)), {{"x", x}, {"y", y}, {"fd", fd_val}, {"ph", exact}}});
    }

    // Slope bounds below H, at a second point drawn from the same stream.
    const double yb = horizontal_isocline(p, x) * (1.0 - rng.uniform());
    const double fb = scalar_slope(p, {x, yb});
    ++slopes.samples_tested;
    if (!(fb > -1.0 && fb < 0.0)) {
      ++slope_misses;
      if (slopes.details.size() < 20) slopes.details.push_back({i, "", {{"x", x}, {"y", yb}, {"slope", fb}}});
    }
  }
  slopes.worst_violation = static_cast<double>(slope_misses);
  fd.finalize();
  slopes.finalize();
  return {fd, slopes};
}

CheckReport fences_suite(const Params& p, std::size_t n) {
  CheckReport rep;
  rep.name = "fences";
  rep.tolerance = 1e-8;
  for (std::size_t k = 0; k < n; ++k) {
    const SlopeValue c((static_cast<double>(k) + 0.5) / static_cast<double>(n) / p.eps());
    const double expected = xi(p, c);
    const double found = fence_switch(p, c);
    double v = std::abs(found - expected);
    std::string note;
    if (fence_classify(p, c, expected * (1.0 - 1e-3)) != FenceClass::StrongLowerFence ||
        fence_classify(p, c, expected * (1.0 + 1e-3)) != FenceClass::StrongUpperFence) {
      v = std::max(v, 1.0);
      note = "classification does not flip at xi(c)";
    }
    rep.worst_violation = std::max(rep.worst_violation, v);
    ++rep.samples_tested;
    rep.details.push_back({k, note, {{"c", c.c}, {"xi", expected}, {"switch", found}, {"violation", v}}});
  }
  rep.finalize();
  return rep;
}

std::vector<CheckReport> tangency_suite(const Params& p, std::size_t n_curve, std::size_t n_random,
                                        std::uint64_t seed) {
  CheckReport tan;
  tan.name = "tangency";
  tan.tolerance = 1e-8;
  const std::vector<double> xs = log_grid(0.1, 10.0, std::max<std::size_t>(n_curve, 2));
  for (std::size_t i = 0; i < n_curve; ++i) {
    const PhasePoint pt{xs[i], inflection_curve(p, xs[i])};
    const TangentData td = slow_tangent(p, pt);
    const Velocity g = vector_field(p, pt);
    const double cross = std::abs(g.dx * td.sigma_plus - g.dy);
    const double rel = cross / (std::hypot(g.dx, g.dy) * std::hypot(1.0, td.sigma_plus));
    tan.worst_violation = std::max(tan.worst_violation, rel);
    ++tan.samples_tested;
    if (rel > tan.tolerance) tan.details.push_back({i, "", {{"x", pt.x}, {"y", pt.y}, {"relative_cross", rel}}});
  }
  tan.finalize();

  CheckReport disc;
  disc.name = "discriminant";
  disc.seed = seed;
  disc.tolerance = 0.0;
  SampleRng rng(seed);
  for (std::size_t i = 0; i < n_random; ++i) {
    const PhasePoint pt{10.0 * (1.0 - rng.uniform()), 10.0 * rng.uniform()};
    const TangentData td = slow_tangent(p, pt);
    const double bound = 4.0 * p.eps() * pt.x;
    const double v = std::max(bound - td.discriminant, bound - (td.trace * td.trace - 4.0 * td.det));
    ++disc.samples_tested;
    if (v > 0.0) {
      disc.worst_violation = std::max(disc.worst_violation, v);
      if (disc.details.size() < 20) disc.details.push_back({i, "", {{"x", pt.x}, {"y", pt.y}, {"deficit", v}}});
    }
  }
  disc.finalize();
  return {tan, disc};
}

namespace {

constexpr std::array<std::string_view, 7> kSuites{"all",        "concavity", "fences", "trapping",
                                                  "attraction", "longtime",  "table1"};

IntegratorConfig manifold_config() {
  IntegratorConfig cfg;
  cfg.rtol = 1e-12;
  cfg.atol = 1e-14;
  return cfg;
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport> more, std::uint64_t seed) {
  for (auto& r : more) {
    r.seed = seed;
    out.push_back(std::move(r));
  }
}

}  // namespace

std::span<const std::string_view> suite_names() noexcept { return kSuites; }

std::vector<CheckReport> run_suite(std::string_view name, const SuiteConfig& config) {
  if (std::find(kSuites.begin(), kSuites.end(), name) == kSuites.end()) {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
  }
  const Params p(config.eps);
  const bool all = name == "all";
  const auto wants = [&](std::string_view s) { return all || name == s; };
  std::vector<CheckReport> out;

  if (wants("concavity")) {
    append(out, concavity_suite(p, 1000, config.seed), config.seed);
    append(out, tangency_suite(p, 50, 1000, config.seed), config.seed);
  }
  if (wants("fences")) append(out, {fences_suite(p, 50)}, config.seed);
  if (wants("trapping") || wants("attraction")) {
    const auto inits = random_inits(config.seed, config.n_random);
    if (wants("trapping")) {
      TrappingOptions opt;
      opt.threads = config.threads;
      append(out, {trapping_suite(p, inits, config.cfg, opt)}, config.seed);
    }
    if (wants("attraction")) {
      append(out, {attraction_suite(p, inits, config.cfg, 1e4, config.threads)}, config.seed);
    }
  }
  if (wants("longtime")) {
    append(out, {longtime_suite(p, {1.0, 1.0}, longtime_config(config.cfg.rtol))}, config.seed);
  }
  if (wants("table1")) {
    const SlowManifold m = SlowManifold::build(p, manifold_config());
    append(out, {table1_scan(p, m, config.n_table1, config.seed)}, config.seed);
  }
  return out;
}

}  // namespace lindemann
