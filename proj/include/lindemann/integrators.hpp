#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "lindemann/kinetics.hpp"

namespace lindemann {

/// Tolerances and step limits for the adaptive Runge-Kutta integrators.
struct IntegratorConfig {
  double rtol = 1e-9;
  double atol = 1e-12;
  double h_init = 1e-6;
  /// Upper step bound; the integrators additionally cap steps at a tenth of
  /// the integration range.
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 1'000'000;
  /// 0 keeps every accepted step. Otherwise planar samples are thinned to
  /// roughly this many per decade of t (first, last and event rows are kept).
  std::size_t samples_per_decade = 0;

  /// Throws InvalidArgument when the invariants rtol, atol > 0,
  /// h_max >= h_init > 0 and max_steps > 0 do not hold.
  void validate() const;
};

enum class EventKind { CrossH, CrossAlpha, CrossV, CrossY, ReachTarget };

std::string_view to_string(EventKind kind) noexcept;
/// Throws InvalidArgument for unknown names.
EventKind event_kind_from_string(std::string_view name);

enum class IntegrationStatus { Completed, MaxSteps, Diverged, SingularityApproached, LeftQuadrant };

std::string_view to_string(IntegrationStatus status) noexcept;

struct TimeSample {
  double t;
  double x;
  double y;
};

struct Event {
  double t;
  EventKind kind;
  PhasePoint point;
};

struct Trajectory {
  std::vector<TimeSample> samples;
  std::vector<Event> events;
  IntegrationStatus status = IntegrationStatus::Completed;
  std::size_t steps = 0;
  /// Number of times a slightly negative component was clamped back to 0.
  std::size_t clamp_warnings = 0;
};

/// One accepted planar step, with the field evaluated at both ends. Lets
/// callers run Hermite quadratures over the full step sequence even when the
/// stored samples are thinned.
struct PlanarStep {
  double t0, t1;
  std::array<double, 2> state0, state1;
  std::array<double, 2> rate0, rate1;
};

using PlanarObserver = std::function<void(const PlanarStep&)>;

/// Signed distance proxy y - C(x) for the curve C that `kind` watches. All
/// watched curves pass through the origin, so x <= 0 yields y.
double event_function(const Params& p, EventKind kind, PhasePoint pt);

/// Integrates the planar system from t = 0 to t_max with an embedded 5(4)
/// Dormand-Prince pair. Crossings of the watched curves are refined by
/// bisection on sub-steps until the event function is within atol of zero.
Trajectory integrate_planar(const Params& p, PhasePoint init, double t_max, const IntegratorConfig& cfg,
                            std::span<const EventKind> watch = {}, const PlanarObserver& observer = {});

enum class Direction { Forward, Backward };

struct ScalarSample {
  double x;
  double y;
};

struct ScalarEvent {
  double x;
  double y;
  EventKind kind;
};

struct ScalarCurve {
  std::vector<ScalarSample> samples;
  std::vector<ScalarEvent> events;
  Direction direction = Direction::Forward;
  IntegrationStatus status = IntegrationStatus::Completed;
  std::size_t steps = 0;

  ScalarSample back() const { return samples.back(); }
};

struct ScalarOptions {
  std::vector<EventKind> watch;
  bool stop_at_event = false;
  /// The slope field is 0/0 at the origin; integration never goes below this.
  double x_min = 1e-6;
};

/// Integrates y' = f(x, y) from (x_from, y_from) to x_to in either direction.
/// Throws OutOfDomain for nonpositive abscissae and SingularityApproached if
/// the start is within atol of V. Approaching V, leaving the quadrant or
/// reaching x_min end the run early with the matching status.
ScalarCurve integrate_scalar(const Params& p, double x_from, double y_from, double x_to,
                             const IntegratorConfig& cfg, const ScalarOptions& options = {});

}  // namespace lindemann
