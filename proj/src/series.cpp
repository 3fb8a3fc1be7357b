#include "lindemann/series.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lindemann/error.hpp"

namespace lindemann {

OriginSeries::OriginSeries(double eps, std::vector<double> coeffs) : eps_(eps), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "origin series needs at least b_2");
}

double OriginSeries::coefficient(int n) const {
  if (n < 2 || n > order()) throw Error(ErrorCode::InvalidArgument, "origin coefficient index out of range");
  return coeffs_[static_cast<std::size_t>(n - 2)];
}

InfinitySeries::InfinitySeries(double eps, std::vector<double> coeffs) : eps_(eps), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "infinity series needs at least rho_{-1}");
}

double InfinitySeries::coefficient(int n) const {
  if (n < -1 || n > order()) throw Error(ErrorCode::InvalidArgument, "infinity coefficient index out of range");
  return coeffs_[static_cast<std::size_t>(n + 1)];
}

namespace {

// Shared by the floating-point and exact recurrences. `b` is indexed by the
// power of x, so b[0] and b[1] are unused zeros.
template <class T>
std::vector<T> origin_recurrence(const T& eps, int order) {
  std::vector<T> b(static_cast<std::size_t>(order) + 1, T(0));
  b[2] = T(1);
  if (order >= 3) b[3] = T(2) - eps;
  for (int n = 4; n <= order; ++n) {
    T sum(0);
    for (int m = 2; m <= n - 2; ++m) {
      sum += T(n - m) * b[static_cast<std::size_t>(m)] * b[static_cast<std::size_t>(n - m)];
    }
    b[static_cast<std::size_t>(n)] = (T(n - 1) - eps) * b[static_cast<std::size_t>(n - 1)] - eps * sum;
  }
  return std::vector<T>(b.begin() + 2, b.end());
}

// Storage index k holds rho_{k-1}.
template <class T>
std::vector<T> infinity_recurrence(const T& eps, int order) {
  std::vector<T> rho(static_cast<std::size_t>(order) + 2, T(0));
  const auto at = [&rho](int n) -> T& { return rho[static_cast<std::size_t>(n + 1)]; };
  at(-1) = T(1) / eps;
  if (order >= 0) at(0) = -(T(1) / (eps * (T(1) + eps)));
  for (int n = 1; n <= order; ++n) {
    T sum(0);
    for (int m = 1; m <= n; ++m) sum += T(n - m) * at(m - 1) * at(n - m);
    at(n) = -((at(n - 1) - eps * sum) / (T(1) + eps));
  }
  return rho;
}

// Sums terms[0..k*] where k* minimizes |term| over the nonzero finite
// prefix; exact zeros are skipped when locating the minimum.
AsymptoticEstimate optimal_truncation(const std::vector<double>& terms, int first_index) {
  std::size_t best = 0;
  double best_mag = std::numeric_limits<double>::infinity();
  bool found = false;
  std::size_t usable = terms.size();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (!std::isfinite(terms[k])) {
      usable = k;
      break;
    }
    const double mag = std::abs(terms[k]);
    if (mag == 0.0) continue;
    if (mag < best_mag) {
      best_mag = mag;
      best = k;
      found = true;
    }
  }
  if (!found) {
    best = usable == 0 ? 0 : usable - 1;
    best_mag = 0.0;
  }
  double sum = 0.0;
  for (std::size_t k = best + 1; k-- > 0;) sum += terms[k];
  return {sum, first_index + static_cast<int>(best), best_mag};
}

}  // namespace

OriginSeries origin_coeffs(const Params& p, int order) {
  if (order < 2) throw Error(ErrorCode::InvalidArgument, "origin series order must be >= 2");
  return OriginSeries(p.eps(), origin_recurrence<double>(p.eps(), order));
}

InfinitySeries infinity_coeffs(const Params& p, int order) {
  if (order < -1) throw Error(ErrorCode::InvalidArgument, "infinity series order must be >= -1");
  return InfinitySeries(p.eps(), infinity_recurrence<double>(p.eps(), order));
}

std::vector<Rational> origin_coeffs_exact(const Rational& eps, int order) {
  if (order < 2) throw Error(ErrorCode::InvalidArgument, "origin series order must be >= 2");
  if (!(eps > Rational(0))) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  return origin_recurrence<Rational>(eps, order);
}

std::vector<Rational> infinity_coeffs_exact(const Rational& eps, int order) {
  if (order < -1) throw Error(ErrorCode::InvalidArgument, "infinity series order must be >= -1");
  if (!(eps > Rational(0))) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  return infinity_recurrence<Rational>(eps, order);
}

AsymptoticEstimate origin_eval(const OriginSeries& s, double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::OutOfDomain, "origin series is evaluated for x > 0");
  const auto coeffs = s.coefficients();
  std::vector<double> terms(coeffs.size());
  double power = x * x;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    terms[k] = coeffs[k] * power;
    power *= x;
  }
  return optimal_truncation(terms, 2);
}

AsymptoticEstimate infinity_eval(const InfinitySeries& s, double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::OutOfDomain, "infinity series is evaluated for x > 0");
  const auto coeffs = s.coefficients();
  std::vector<double> terms(coeffs.size());
  const double inv = 1.0 / x;
  double power = x;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    terms[k] = coeffs[k] * power;
    power *= inv;
  }
  return optimal_truncation(terms, -1);
}

double lambert_w(double z) {
  constexpr double branch = -1.0 / std::numbers::e;
  if (std::isnan(z) || z < branch) {
    if (z >= branch * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) return -1.0;
    throw Error(ErrorCode::OutOfDomain, "Lambert W is real only for z >= -1/e");
  }
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return z;

  double w;
  if (z < -0.25) {
    // Expansion about the branch point in p = sqrt(2 (e z + 1)).
    const double p = std::sqrt(2.0 * (std::numbers::e * z + 1.0));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  } else if (std::abs(z) < 0.1) {
    w = z * (1.0 - z * (1.0 - 1.5 * z));
  } else if (z <= std::numbers::e) {
    w = std::log1p(z);
  } else {
    const double l1 = std::log(z);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0) break;
    const double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

double lambert_w_exp(double log_z) {
  if (std::isnan(log_z)) throw Error(ErrorCode::OutOfDomain, "lambert_w_exp of NaN");
  if (log_z < 2.0) return lambert_w(std::exp(log_z));
  if (std::isinf(log_z)) return log_z;
  // Solve w + ln w = log_z by Halley's method; w > 1 here.
  const double l = std::log(log_z);
  double w = log_z - l + l / log_z;
  for (int iter = 0; iter < 64; ++iter) {
    const double g = w + std::log(w) - log_z;
    const double g1 = 1.0 + 1.0 / w;
    const double g2 = -1.0 / (w * w);
    const double dw = g / (g1 - 0.5 * g * g2 / g1);
    w -= dw;
    if (std::abs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * w) break;
  }
  return w;
}

double phi_comparison(double t, double a, double t0, double u0) {
  if (!(a > 0.0) || !(u0 > 0.0) || !(t0 >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "phi needs a > 0, u0 > 0 and t0 >= 0");
  }
  if (!(t >= t0)) throw Error(ErrorCode::OutOfDomain, "phi is defined for t >= t0");
  const double q = 1.0 / (a * u0);
  const double log_argument = std::log(q) + q + (t - t0) / a;
  return 1.0 / (a * lambert_w_exp(log_argument));
}

std::pair<double, double> longtime_leading(double eps, double t) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be >= 0");
  if (!(t > 1.0)) throw Error(ErrorCode::OutOfDomain, "long-time formulas need t > 1");
  const double lt = std::log(t);
  const double x = 1.0 / t + eps * lt / (t * t);
  const double y = 1.0 / (t * t) + 2.0 * eps * lt / (t * t * t);
  return {x, y};
}

std::pair<double, double> longtime_leading(const Params& p, double t) { return longtime_leading(p.eps(), t); }

}  // namespace lindemann
