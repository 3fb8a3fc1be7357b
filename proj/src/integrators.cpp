#include "lindemann/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lindemann/error.hpp"

namespace lindemann {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::CrossH: return "CrossH";
    case EventKind::CrossAlpha: return "CrossAlpha";
    case EventKind::CrossV: return "CrossV";
    case EventKind::CrossY: return "CrossY";
    case EventKind::ReachTarget: return "ReachTarget";
  }
  return "Unknown";
}

EventKind event_kind_from_string(std::string_view name) {
  for (EventKind k : {EventKind::CrossH, EventKind::CrossAlpha, EventKind::CrossV, EventKind::CrossY,
                      EventKind::ReachTarget}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown event kind '" + std::string(name) + "'");
}

std::string_view to_string(IntegrationStatus status) noexcept {
  switch (status) {
    case IntegrationStatus::Completed: return "Completed";
    case IntegrationStatus::MaxSteps: return "MaxSteps";
    case IntegrationStatus::Diverged: return "Diverged";
    case IntegrationStatus::SingularityApproached: return "SingularityApproached";
    case IntegrationStatus::LeftQuadrant: return "LeftQuadrant";
  }
  return "Unknown";
}

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rtol and atol must be positive");
  if (!(h_init > 0.0) || !(h_max >= h_init)) {
    throw Error(ErrorCode::InvalidArgument, "step bounds must satisfy h_max >= h_init > 0");
  }
  if (max_steps == 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be positive");
}

double event_function(const Params& p, EventKind kind, PhasePoint pt) {
  if (!(pt.x > 0.0)) return pt.y;
  switch (kind) {
    case EventKind::CrossH: return pt.y - horizontal_isocline(p, pt.x);
    case EventKind::CrossAlpha: return pt.y - alpha_isocline(p, pt.x);
    case EventKind::CrossV: return pt.y - vertical_isocline(p, pt.x);
    case EventKind::CrossY: return pt.y - inflection_curve(p, pt.x);
    case EventKind::ReachTarget: return 0.0;
  }
  return 0.0;
}

namespace {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct TrialStep {
  Vec<N> y;
  Vec<N> rate_end;
  Vec<N> err;
};

// Dormand-Prince 5(4); rate_end is the FSAL stage, i.e. the field at y.
template <std::size_t N, class Rhs>
TrialStep<N> dopri_step(const Rhs& f, double t, const Vec<N>& y, const Vec<N>& k1, double h) {
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                   a65 = -5103.0 / 18656.0;
  constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                   b6 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                   e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  Vec<N> tmp;
  const auto stage = [&](auto&& combine) {
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * combine(i);
    return tmp;
  };
  const Vec<N> k2 = f(t + h / 5.0, stage([&](std::size_t i) { return a21 * k1[i]; }));
  const Vec<N> k3 = f(t + 3.0 * h / 10.0, stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; }));
  const Vec<N> k4 =
      f(t + 4.0 * h / 5.0, stage([&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; }));
  const Vec<N> k5 = f(t + 8.0 * h / 9.0, stage([&](std::size_t i) {
                        return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
                      }));
  const Vec<N> k6 = f(t + h, stage([&](std::size_t i) {
                        return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
                      }));
  TrialStep<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out.y[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  }
  out.rate_end = f(t + h, out.y);
  for (std::size_t i = 0; i < N; ++i) {
    out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * out.rate_end[i]);
  }
  return out;
}

template <std::size_t N>
double error_norm(const Vec<N>& err, const Vec<N>& y0, const Vec<N>& y1, const IntegratorConfig& cfg) {
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / scale;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(N));
}

template <std::size_t N>
bool all_finite(const Vec<N>& v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

template <std::size_t N>
struct AcceptedStep {
  double t0, t1;
  Vec<N> y0, y1;
  Vec<N> k0, k1;
};

enum class Verdict { Continue, Stop };

// Adaptive driver with a proportional-integral step controller. `fixup` may
// project an accepted state (returns true when it changed it); `accept`
// sees every accepted step and may stop the run.
template <std::size_t N, class Rhs, class Fixup, class Accept>
IntegrationStatus drive(const Rhs& f, double t0, const Vec<N>& y_init, double t_end, const IntegratorConfig& cfg,
                        std::size_t& steps, Fixup&& fixup, Accept&& accept) {
  constexpr double safety = 0.9, beta = 0.04, alpha = 0.2 - 0.75 * beta;
  constexpr double fac_min = 0.2, fac_max = 5.0;

  const double dir = t_end >= t0 ? 1.0 : -1.0;
  const double range = std::abs(t_end - t0);
  const double h_max = std::min(cfg.h_max, range / 10.0);
  double h = std::min(cfg.h_init, h_max);
  double err_prev = 1e-4;
  bool rejected_last = false;

  double t = t0;
  Vec<N> y = y_init;
  Vec<N> k = f(t, y);
  steps = 0;
  std::size_t attempts = 0;

  while (dir * (t_end - t) > 0.0) {
    if (attempts++ >= cfg.max_steps) return IntegrationStatus::MaxSteps;
    bool last = false;
    if (h >= std::abs(t_end - t)) {
      h = std::abs(t_end - t);
      last = true;
    }
    if (h <= 1e-15 * std::max(1.0, std::abs(t))) return IntegrationStatus::Diverged;

    const TrialStep<N> trial = dopri_step<N>(f, t, y, k, dir * h);
    const double err = error_norm<N>(trial.err, y, trial.y, cfg);
    if (!std::isfinite(err) || !all_finite<N>(trial.y)) {
      h *= fac_min;
      rejected_last = true;
      continue;
    }
    if (err > 1.0) {
      h *= std::max(fac_min, safety * std::pow(err, -alpha));
      rejected_last = true;
      continue;
    }

    AcceptedStep<N> step{t, last ? t_end : t + dir * h, y, trial.y, k, trial.rate_end};
    if (fixup(step.y1)) step.k1 = f(step.t1, step.y1);
    if (!all_finite<N>(step.y1) || !all_finite<N>(step.k1)) return IntegrationStatus::Diverged;
    ++steps;

    const Verdict verdict = accept(step);
    t = step.t1;
    y = step.y1;
    k = step.k1;
    if (verdict == Verdict::Stop) return IntegrationStatus::Completed;

    double fac = err == 0.0 ? fac_max : safety * std::pow(err, -alpha) * std::pow(err_prev, beta);
    fac = std::clamp(fac, fac_min, fac_max);
    if (rejected_last) fac = std::min(fac, 1.0);
    h = std::min(h * fac, h_max);
    err_prev = std::max(err, 1e-4);
    rejected_last = false;
  }
  return IntegrationStatus::Completed;
}

// Locates the zero of g inside an accepted step by bisecting the sub-step
// length, re-stepping from the step start each time.
template <std::size_t N, class Rhs, class G>
std::pair<double, Vec<N>> refine_crossing(const Rhs& f, const AcceptedStep<N>& step, const G& g, double tol) {
  const double h = step.t1 - step.t0;
  double lo = 0.0, hi = 1.0;
  const double g_lo = g(step.t0, step.y0);
  double t_best = step.t1;
  Vec<N> y_best = step.y1;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double tm = step.t0 + mid * h;
    const Vec<N> ym = dopri_step<N>(f, step.t0, step.y0, step.k0, mid * h).y;
    const double gm = g(tm, ym);
    t_best = tm;
    y_best = ym;
    if (std::abs(gm) <= tol || hi - lo <= 1e-16) break;
    if ((gm < 0.0) == (g_lo < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {t_best, y_best};
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Trajectory integrate_planar(const Params& p, PhasePoint init, double t_max, const IntegratorConfig& cfg,
                            std::span<const EventKind> watch, const PlanarObserver& observer) {
  cfg.validate();
  if (!init.in_quadrant() || !std::isfinite(init.x) || !std::isfinite(init.y)) {
    throw Error(ErrorCode::OutOfDomain, "initial point must lie in the nonnegative quadrant");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");

  const auto rhs = [&p](double, const Vec<2>& s) {
    const Velocity v = vector_field(p, {s[0], s[1]});
    return Vec<2>{v.dx, v.dy};
  };

  std::vector<EventKind> crossings;
  bool want_target = false;
  for (EventKind k : watch) {
    if (k == EventKind::ReachTarget) {
      want_target = true;
    } else if (std::find(crossings.begin(), crossings.end(), k) == crossings.end()) {
      crossings.push_back(k);
    }
  }

  Trajectory traj;
  traj.samples.push_back({0.0, init.x, init.y});
  std::vector<bool> starts_on_curve(crossings.size());
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    starts_on_curve[i] = std::abs(event_function(p, crossings[i], init)) <= cfg.atol;
  }

  const auto fixup = [&traj](Vec<2>& s) {
    bool changed = false;
    for (double& v : s) {
      if (v < 0.0) {
        v = 0.0;
        changed = true;
      }
    }
    if (changed) ++traj.clamp_warnings;
    return changed;
  };

  const double spd = static_cast<double>(cfg.samples_per_decade);
  const auto bucket = [spd](double t) { return t > 0.0 ? std::floor(spd * std::log10(t)) : -1e300; };

  const auto accept = [&](const AcceptedStep<2>& step) {
    std::vector<Event> found;
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      const EventKind kind = crossings[i];
      const auto g = [&](double, const Vec<2>& s) { return event_function(p, kind, {s[0], s[1]}); };
      const double g0 = g(step.t0, step.y0);
      const double g1 = g(step.t1, step.y1);
      if (starts_on_curve[i]) {
        if (std::abs(g1) > cfg.atol) {
          found.push_back({step.t0, kind, {step.y0[0], step.y0[1]}});
          starts_on_curve[i] = false;
        }
        continue;
      }
      if (sign_of(g0) * sign_of(g1) < 0) {
        const auto [te, ye] = refine_crossing<2>(rhs, step, g, cfg.atol);
        found.push_back({te, kind, {ye[0], ye[1]}});
      } else if (g1 == 0.0 && g0 != 0.0) {
        found.push_back({step.t1, kind, {step.y1[0], step.y1[1]}});
      }
    }
    std::stable_sort(found.begin(), found.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
    traj.events.insert(traj.events.end(), found.begin(), found.end());

    const bool keep = cfg.samples_per_decade == 0 || !found.empty() || step.t1 >= t_max ||
                      bucket(step.t1) > bucket(traj.samples.back().t);
    if (keep) traj.samples.push_back({step.t1, step.y1[0], step.y1[1]});
    if (observer) observer(PlanarStep{step.t0, step.t1, step.y0, step.y1, step.k0, step.k1});
    return Verdict::Continue;
  };

  traj.status = drive<2>(rhs, 0.0, Vec<2>{init.x, init.y}, t_max, cfg, traj.steps, fixup, accept);
  if (traj.status == IntegrationStatus::Completed && want_target) {
    const TimeSample& last = traj.samples.back();
    traj.events.push_back({last.t, EventKind::ReachTarget, {last.x, last.y}});
  }
  return traj;
}

ScalarCurve integrate_scalar(const Params& p, double x_from, double y_from, double x_to, const IntegratorConfig& cfg,
                             const ScalarOptions& options) {
  cfg.validate();
  if (!(x_from > 0.0) || !(x_to > 0.0)) throw Error(ErrorCode::OutOfDomain, "scalar integration needs x > 0");
  if (!std::isfinite(y_from) || y_from < 0.0) throw Error(ErrorCode::OutOfDomain, "start must have finite y >= 0");
  if (std::abs(y_from - vertical_isocline(p, x_from)) <= cfg.atol) {
    throw Error(ErrorCode::SingularityApproached, "refusing to start on the vertical isocline");
  }

  const double e = p.eps();
  const auto rhs = [e](double x, const Vec<1>& s) {
    const double y = s[0];
    return Vec<1>{(x * x - (1.0 + e * x) * y) / (x * (e * y - x))};
  };

  ScalarCurve curve;
  curve.direction = x_to >= x_from ? Direction::Forward : Direction::Backward;
  curve.samples.push_back({x_from, y_from});

  double target = x_to;
  bool clipped_at_min = false;
  if (target < options.x_min) {
    target = std::min(x_from, options.x_min);
    clipped_at_min = true;
  }
  if (target == x_from) {
    curve.status = clipped_at_min ? IntegrationStatus::SingularityApproached : IntegrationStatus::Completed;
    return curve;
  }

  IntegrationStatus early = IntegrationStatus::Completed;
  bool stopped = false;
  const auto fixup = [](Vec<1>&) { return false; };
  const auto accept = [&](const AcceptedStep<1>& step) {
    const double x1 = step.t1, y1 = step.y1[0];
    for (EventKind kind : options.watch) {
      if (kind == EventKind::ReachTarget) continue;
      const auto g = [&](double x, const Vec<1>& s) { return event_function(p, kind, {x, s[0]}); };
      const double g0 = g(step.t0, step.y0);
      const double g1 = g(x1, step.y1);
      if (sign_of(g0) * sign_of(g1) < 0 || (g1 == 0.0 && g0 != 0.0)) {
        const auto [xe, ye] = refine_crossing<1>(rhs, step, g, cfg.atol);
        curve.events.push_back({xe, ye[0], kind});
      }
    }
    if (!curve.events.empty() && options.stop_at_event) {
      // Keep only the first crossing along the direction of integration.
      const bool fwd = curve.direction == Direction::Forward;
      std::stable_sort(curve.events.begin(), curve.events.end(),
                       [fwd](const ScalarEvent& a, const ScalarEvent& b) { return fwd ? a.x < b.x : a.x > b.x; });
      curve.events.resize(1);
      curve.samples.push_back({curve.events[0].x, curve.events[0].y});
      stopped = true;
      return Verdict::Stop;
    }
    if (y1 < 0.0) {
      early = IntegrationStatus::LeftQuadrant;
      stopped = true;
      return Verdict::Stop;
    }
    curve.samples.push_back({x1, y1});
    if (std::abs(x1 * (e * y1 - x1)) < cfg.atol) {
      early = IntegrationStatus::SingularityApproached;
      stopped = true;
      return Verdict::Stop;
    }
    return Verdict::Continue;
  };

  const IntegrationStatus status = drive<1>(rhs, x_from, Vec<1>{y_from}, target, cfg, curve.steps, fixup, accept);
  if (status == IntegrationStatus::Diverged) {
    // The step size collapses where y' blows up; next to V that is the pole.
    const ScalarSample last = curve.back();
    const bool near_v = std::abs(e * last.y - last.x) <= 1e-6 * last.x;
    curve.status = near_v ? IntegrationStatus::SingularityApproached : status;
  } else if (status != IntegrationStatus::Completed) {
    curve.status = status;
  } else if (stopped) {
    curve.status = early;
  } else {
    curve.status = clipped_at_min ? IntegrationStatus::SingularityApproached : IntegrationStatus::Completed;
    if (std::find(options.watch.begin(), options.watch.end(), EventKind::ReachTarget) != options.watch.end()) {
      curve.events.push_back({curve.samples.back().x, curve.samples.back().y, EventKind::ReachTarget});
    }
  }
  return curve;
}

}  // namespace lindemann
