#include "lindemann/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lindemann/error.hpp"

namespace lindemann {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DenominatorZero: return "DenominatorZero";
    case ErrorCode::PoleAtX: return "PoleAtX";
    case ErrorCode::PoleAtMinusOne: return "PoleAtMinusOne";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegenerateRoots: return "DegenerateRoots";
    case ErrorCode::NonpositiveRate: return "NonpositiveRate";
    case ErrorCode::SingularityApproached: return "SingularityApproached";
    case ErrorCode::MaxSteps: return "MaxSteps";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::BracketViolation: return "BracketViolation";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::SeamMismatch: return "SeamMismatch";
  }
  return "Unknown";
}

std::string_view to_string(RegionLabel label) noexcept {
  switch (label) {
    case RegionLabel::BelowH: return "BelowH";
    case RegionLabel::OnH: return "OnH";
    case RegionLabel::BetweenHAndY: return "BetweenHAndY";
    case RegionLabel::OnY: return "OnY";
    case RegionLabel::BetweenYAndAlpha: return "BetweenYAndAlpha";
    case RegionLabel::OnAlpha: return "OnAlpha";
    case RegionLabel::BetweenAlphaAndV: return "BetweenAlphaAndV";
    case RegionLabel::OnV: return "OnV";
    case RegionLabel::AboveV: return "AboveV";
  }
  return "Unknown";
}

Params::Params(double eps) : eps_(eps) {
  if (!std::isfinite(eps) || eps <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "eps must be finite and positive, got " + std::to_string(eps));
  }
}

PhasePoint PhasePoint::checked(double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorCode::OutOfDomain, "phase point must lie in the closed nonnegative quadrant");
  }
  return {x, y};
}

Velocity vector_field(const Params& p, PhasePoint pt) noexcept {
  const double e = p.eps();
  const double x = pt.x, y = pt.y;
  return {-x * x + e * x * y, x * x - (1.0 + e * x) * y};
}

double scalar_slope(const Params& p, PhasePoint pt) {
  const auto g = vector_field(p, pt);
  if (pt.x == 0.0 || g.dx == 0.0) {
    throw Error(ErrorCode::DenominatorZero, "slope field is singular on V and on x = 0");
  }
  return g.dy / g.dx;
}

double scalar_slope_dy(const Params& p, PhasePoint pt) {
  const double d = pt.x - p.eps() * pt.y;
  if (pt.x == 0.0 || d == 0.0) {
    throw Error(ErrorCode::DenominatorZero, "slope field is singular on V and on x = 0");
  }
  return 1.0 / (d * d);
}

double k_of_c(SlopeValue c) {
  if (c.c == -1.0) throw Error(ErrorCode::PoleAtMinusOne, "K(c) is undefined at c = -1");
  return 1.0 / (1.0 + c.c);
}

double horizontal_isocline(const Params& p, double x) noexcept { return x * x / (1.0 + p.eps() * x); }

double vertical_isocline(const Params& p, double x) noexcept { return x / p.eps(); }

double alpha_isocline(const Params& p, double x) noexcept {
  const double e = p.eps();
  return x * x / (e / (1.0 + e) + e * x);
}

namespace {

double slope_isocline_denominator(const Params& p, double k, double x) {
  const double d = k + p.eps() * x;
  if (std::abs(d) <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(k) + p.eps() * x)) {
    throw Error(ErrorCode::PoleAtX, "x is at the vertical asymptote of the isocline");
  }
  return d;
}

}  // namespace

double isocline(const Params& p, Isocline which, double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::OutOfDomain, "isoclines are evaluated for x > 0");
  switch (which.kind) {
    case IsoclineKind::Horizontal: return horizontal_isocline(p, x);
    case IsoclineKind::Vertical: return vertical_isocline(p, x);
    case IsoclineKind::Alpha: return alpha_isocline(p, x);
    case IsoclineKind::Slope: {
      const double k = k_of_c(SlopeValue(which.c));
      return x * x / slope_isocline_denominator(p, k, x);
    }
  }
  return 0.0;
}

double isocline_derivative(const Params& p, SlopeValue c, double x) {
  const double k = k_of_c(c);
  const double d = slope_isocline_denominator(p, k, x);
  return x * (2.0 * k + p.eps() * x) / (d * d);
}

namespace {

void require_fence_slope(const Params& p, double c) {
  if (!(c > 0.0) || !(c * p.eps() < 1.0)) {
    throw Error(ErrorCode::OutOfDomain, "xi(c) requires 0 < c < 1/eps");
  }
}

// xi(c) = (K/eps)(1/s - 1) with s = sqrt(1 - eps c), rewritten as
// K c / (s (1 + s)) so that small c does not cancel.
double xi_unchecked(double eps, double c) {
  const double s = std::sqrt(1.0 - eps * c);
  return c / ((1.0 + c) * s * (1.0 + s));
}

}  // namespace

double xi(const Params& p, SlopeValue c) {
  require_fence_slope(p, c.c);
  return xi_unchecked(p.eps(), c.c);
}

double xi_derivative(const Params& p, SlopeValue c) {
  require_fence_slope(p, c.c);
  const double e = p.eps();
  const double s = std::sqrt(1.0 - e * c.c);
  const double value = xi_unchecked(e, c.c);
  const double log_slope =
      -1.0 / (1.0 + c.c) + 1.0 / c.c + e / (2.0 * s * s) + e / (2.0 * s * (1.0 + s));
  return value * log_slope;
}

SlopeValue xi_inverse(const Params& p, double x, double rel_tol) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::OutOfDomain, "xi_inverse requires x > 0");
  const double e = p.eps();
  // xi is strictly increasing from 0 to infinity on the open interval.
  double lo = 0.0;
  double hi = 1.0 / e;
  const double bisect_tol = std::max(rel_tol, 1e-10);
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (xi_unchecked(e, mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (lo > 0.0 && hi - lo <= bisect_tol * lo) break;
  }
  double c = 0.5 * (lo + hi);
  for (int iter = 0; iter < 3; ++iter) {
    const double g = xi_unchecked(e, c) - x;
    const double dg = xi_derivative(p, SlopeValue(c));
    if (!(dg > 0.0) || !std::isfinite(dg)) break;
    const double next = c - g / dg;
    if (!(next > lo && next < hi)) break;
    c = next;
  }
  return SlopeValue(c);
}

double h_aux(const Params& p, PhasePoint pt) {
  const double f = scalar_slope(p, pt);
  return pt.x * pt.x * f + pt.y * (p.eps() * pt.y - 2.0 * pt.x);
}

double p_aux(const Params& p, PhasePoint pt) {
  const double d = p.eps() * pt.y - pt.x;
  if (pt.x == 0.0 || d == 0.0) {
    throw Error(ErrorCode::DenominatorZero, "p(x, y) is undefined on V and on x = 0");
  }
  return 1.0 / (pt.x * pt.x * d * d);
}

double inflection_cubic(const Params& p, double x, double y) noexcept {
  const double e = p.eps();
  return ((e * e * y - 3.0 * e * x) * y + (2.0 * x * x - e * x * x - x)) * y + x * x * x;
}

double inflection_curve(const Params& p, double x) {
  const SlopeValue c = xi_inverse(p, x);
  return isocline(p, Isocline::F(c.c), x);
}

std::vector<double> inflection_cubic_roots(const Params& p, double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::OutOfDomain, "inflection cubic roots need x > 0");
  const double e = p.eps();
  // Monic form y^3 + b y^2 + c y + d, shifted by y = t - b/3 to t^3 + P t + Q.
  const double b = -3.0 * x / e;
  const double c = (2.0 * x * x - e * x * x - x) / (e * e);
  const double d = x * x * x / (e * e);
  const double shift = -b / 3.0;
  const double P = c - b * b / 3.0;
  const double Q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

  const double disc = -(4.0 * P * P * P + 27.0 * Q * Q);
  const double scale = std::abs(4.0 * P * P * P) + 27.0 * Q * Q;
  if (!(P < 0.0) || disc <= 1e-13 * scale) {
    throw Error(ErrorCode::DegenerateRoots, "inflection cubic does not have three well separated real roots");
  }

  const double m = 2.0 * std::sqrt(-P / 3.0);
  const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  std::vector<double> roots;
  roots.reserve(3);
  for (int k = 0; k < 3; ++k) {
    roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift);
  }

  // One Newton polish per root on the original (unnormalized) cubic.
  for (double& y : roots) {
    const double value = inflection_cubic(p, x, y);
    const double slope = (3.0 * e * e * y - 6.0 * e * x) * y + (2.0 * x * x - e * x * x - x);
    if (slope != 0.0) y -= value / slope;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

TangentData slow_tangent(const Params& p, PhasePoint pt) {
  if (!(pt.x > 0.0)) throw Error(ErrorCode::OutOfDomain, "slow_tangent requires x > 0");
  const double e = p.eps();
  const double x = pt.x, y = pt.y;
  const double g11 = -2.0 * x + e * y;
  const double g12 = e * x;

  TangentData out;
  out.trace = -(e + 2.0) * x + e * y - 1.0;
  out.det = 2.0 * x - e * y;
  const double shifted = e * y - (e + 2.0) * x + 1.0;
  out.discriminant = shifted * shifted + 4.0 * e * x;

  const double root = std::sqrt(out.discriminant);
  const double q = 0.5 * (out.trace + std::copysign(root, out.trace));
  const double first = q;
  const double second = out.det / q;
  out.lambda_plus = std::max(first, second);
  out.lambda_minus = std::min(first, second);
  out.sigma_plus = (out.lambda_plus - g11) / g12;
  out.sigma_minus = (out.lambda_minus - g11) / g12;
  return out;
}

Nondimensional nondimensionalize(double k1, double km1, double k2, double a0, double b0) {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(k1) || !positive(km1) || !positive(k2)) {
    throw Error(ErrorCode::NonpositiveRate, "rate constants k1, km1 and k2 must be positive");
  }
  if (!(a0 >= 0.0) || !(b0 >= 0.0) || !std::isfinite(a0) || !std::isfinite(b0)) {
    throw Error(ErrorCode::OutOfDomain, "initial concentrations must be nonnegative");
  }
  const double scale = k1 / k2;
  return {Params(km1 / k1), PhasePoint{scale * a0, scale * b0}, k2};
}

RegionLabel classify_region(const Params& p, PhasePoint pt, double band) {
  if (!(pt.x > 0.0)) throw Error(ErrorCode::OutOfDomain, "region classification requires x > 0");
  const double y = pt.y;
  const double boundaries[4] = {horizontal_isocline(p, pt.x), inflection_curve(p, pt.x),
                                alpha_isocline(p, pt.x), vertical_isocline(p, pt.x)};
  constexpr RegionLabel on[4] = {RegionLabel::OnH, RegionLabel::OnY, RegionLabel::OnAlpha, RegionLabel::OnV};
  constexpr RegionLabel below[4] = {RegionLabel::BelowH, RegionLabel::BetweenHAndY,
                                    RegionLabel::BetweenYAndAlpha, RegionLabel::BetweenAlphaAndV};
  for (int i = 0; i < 4; ++i) {
    if (std::abs(y - boundaries[i]) <= band) return on[i];
    if (y < boundaries[i]) return below[i];
  }
  return RegionLabel::AboveV;
}

}  // namespace lindemann
