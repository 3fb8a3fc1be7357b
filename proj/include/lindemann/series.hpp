#pragma once

// Asymptotic expansions of the slow manifold and the long-time behaviour of
// planar solutions.
//
//   origin:    y ~ sum_{n>=2} b_n x^n          (divergent, zero radius)
//   infinity:  y ~ sum_{n>=-1} rho_n x^{-n}    (treated as asymptotic)
//
// Both are evaluated with optimal truncation. Lambert W and the comparison
// solution phi of u' = -u^2/(1 + a u) live here as well.

#include <span>
#include <utility>
#include <vector>

#include "lindemann/kinetics.hpp"
#include "lindemann/rational.hpp"

namespace lindemann {

/// Result of evaluating a truncated asymptotic series.
struct AsymptoticEstimate {
  double value = 0.0;
  /// Series index of the last included term.
  int truncation_index = 0;
  /// Magnitude of that term; a proxy for the truncation error.
  double last_term_magnitude = 0.0;
};

/// Coefficients b_2..b_N of the expansion at the origin (b_0 = b_1 = 0).
class OriginSeries {
 public:
  OriginSeries(double eps, std::vector<double> coeffs);

  double eps() const noexcept { return eps_; }
  int order() const noexcept { return static_cast<int>(coeffs_.size()) + 1; }
  /// b_n for 2 <= n <= order().
  double coefficient(int n) const;
  std::span<const double> coefficients() const noexcept { return coeffs_; }

 private:
  double eps_;
  std::vector<double> coeffs_;
};

/// Coefficients rho_{-1}..rho_N of the expansion at infinity.
class InfinitySeries {
 public:
  InfinitySeries(double eps, std::vector<double> coeffs);

  double eps() const noexcept { return eps_; }
  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 2; }
  /// rho_n for -1 <= n <= order().
  double coefficient(int n) const;
  std::span<const double> coefficients() const noexcept { return coeffs_; }

 private:
  double eps_;
  std::vector<double> coeffs_;
};

/// b_2 = 1, b_3 = 2 - eps and
/// b_n = (n - 1 - eps) b_{n-1} - eps sum_{m=2}^{n-2} (n - m) b_m b_{n-m}.
/// Throws InvalidArgument for order < 2.
OriginSeries origin_coeffs(const Params& p, int order);

/// rho_{-1} = 1/eps, rho_0 = -1/(eps (1 + eps)) and
/// rho_n = -[rho_{n-1} - eps sum_{m=1}^{n} (n - m) rho_{m-1} rho_{n-m}] / (1 + eps).
/// Throws InvalidArgument for order < -1.
InfinitySeries infinity_coeffs(const Params& p, int order);

/// Exact versions of the two recurrences for rational eps. Index 0 of the
/// result holds b_2 (resp. rho_{-1}).
std::vector<Rational> origin_coeffs_exact(const Rational& eps, int order);
std::vector<Rational> infinity_coeffs_exact(const Rational& eps, int order);

/// Optimally truncated partial sum of the origin series at x > 0.
AsymptoticEstimate origin_eval(const OriginSeries& s, double x);

/// Optimally truncated partial sum of the infinity series at x > 0.
AsymptoticEstimate infinity_eval(const InfinitySeries& s, double x);

/// Principal branch of Lambert W for z >= -1/e. Throws OutOfDomain below.
double lambert_w(double z);

/// W(exp(log_z)) computed without forming exp(log_z), so arguments far
/// beyond the double range are fine.
double lambert_w_exp(double log_z);

/// phi(t; a, t0, u0) = 1 / (a W([e^{1/(a u0)} / (a u0)] e^{(t - t0)/a})), the
/// solution of u' = -u^2 / (1 + a u) with u(t0) = u0. Requires a, u0 > 0 and
/// t >= t0 >= 0.
double phi_comparison(double t, double a, double t0, double u0);

/// Leading-order long-time behaviour of every planar solution:
///   x ~ 1/t + eps ln t / t^2,  y ~ 1/t^2 + 2 eps ln t / t^3.
/// Takes eps >= 0 directly so the eps -> 0 limit can be evaluated.
std::pair<double, double> longtime_leading(double eps, double t);
std::pair<double, double> longtime_leading(const Params& p, double t);

}  // namespace lindemann
