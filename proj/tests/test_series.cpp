#include <cmath>
#include <map>
#include <numbers>

#include <doctest.h>

#include "lindemann/error.hpp"
#include "lindemann/rational.hpp"
#include "lindemann/series.hpp"
#include "support.hpp"

using namespace lindemann;

namespace {

// Laurent polynomial with exact coefficients, keyed by degree.
using Laurent = std::map<int, Rational>;

Laurent mul(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b) r[da + db] += ca * cb;
  return r;
}

Laurent add(Laurent a, const Laurent& b, const Rational& scale = Rational(1)) {
  for (const auto& [d, c] : b) a[d] += scale * c;
  return a;
}

Laurent derivative(const Laurent& a) {
  Laurent r;
  for (const auto& [d, c] : a)
    if (d != 0) r[d - 1] += Rational(d) * c;
  return r;
}

Laurent monomial(int degree, const Rational& c = Rational(1)) { return {{degree, c}}; }

// eps x y y' - x^2 y' - x^2 + y + eps x y
Laurent manifold_residual(const Laurent& y, const Rational& eps) {
  const Laurent dy = derivative(y);
  Laurent r = mul(mul(monomial(1, eps), y), dy);
  r = add(r, mul(monomial(2), dy), Rational(-1));
  r = add(r, monomial(2), Rational(-1));
  r = add(r, y);
  r = add(r, mul(monomial(1, eps), y));
  return r;
}

double evaluate(const Laurent& a, double x) {
  double s = 0.0;
  for (const auto& [d, c] : a) s += c.to_double() * std::pow(x, d);
  return s;
}

}  // namespace

TEST_CASE("origin coefficients") {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 7.0}) {
    const OriginSeries s = origin_coeffs(Params(eps), 5);
    CHECK(s.coefficient(2) == 1.0);
    CHECK(s.coefficient(3) == 2.0 - eps);
  }
  const OriginSeries one = origin_coeffs(Params(1.0), 5);
  CHECK(std::abs(one.coefficient(4)) <= 1e-12);
  CHECK(std::abs(one.coefficient(5) + 5.0) <= 1e-12);
  CHECK(origin_coeffs(Params(2.0), 3).coefficient(3) == 0.0);
}

TEST_CASE("infinity coefficients") {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 7.0}) {
    const InfinitySeries s = infinity_coeffs(Params(eps), 2);
    CHECK(s.coefficient(-1) == doctest::Approx(1.0 / eps));
    CHECK(s.coefficient(0) == doctest::Approx(-1.0 / (eps * (1 + eps))));
    CHECK(s.coefficient(1) == doctest::Approx(1.0 / (eps * (1 + eps) * (1 + eps))));
  }
  const InfinitySeries one = infinity_coeffs(Params(1.0), 2);
  CHECK(std::abs(one.coefficient(-1) - 1.0) <= 1e-12);
  CHECK(std::abs(one.coefficient(0) + 0.5) <= 1e-12);
  CHECK(std::abs(one.coefficient(1) - 0.25) <= 1e-12);
  CHECK(std::abs(one.coefficient(2) + 0.1875) <= 1e-12);
}

TEST_CASE("exact coefficients agree with the floating ones") {
  for (const auto& [eps, eps_q] : {std::pair{1.0, Rational(1)}, std::pair{2.0, Rational(2)},
                                   std::pair{0.5, Rational(1, 2)}}) {
    const auto bq = origin_coeffs_exact(eps_q, 8);
    const OriginSeries b = origin_coeffs(Params(eps), 8);
    REQUIRE(bq.size() == 7);
    for (int n = 2; n <= 8; ++n) CHECK(bq[n - 2].to_double() == doctest::Approx(b.coefficient(n)).epsilon(1e-14));

    const auto rq = infinity_coeffs_exact(eps_q, 5);
    const InfinitySeries r = infinity_coeffs(Params(eps), 5);
    REQUIRE(rq.size() == 7);
    for (int n = -1; n <= 5; ++n) CHECK(rq[n + 1].to_double() == doctest::Approx(r.coefficient(n)).epsilon(1e-14));
  }
  CHECK(origin_coeffs_exact(Rational(1), 5)[3] == Rational(-5));
  CHECK(infinity_coeffs_exact(Rational(1), 2)[3] == Rational(-3, 16));
}

TEST_CASE("truncated origin series solves the manifold equation up to its order") {
  for (const Rational& eps : {Rational(1), Rational(2), Rational(1, 3)}) {
    for (int order = 2; order <= 6; ++order) {
      const auto b = origin_coeffs_exact(eps, order);
      Laurent y;
      for (int n = 2; n <= order; ++n) y[n] = b[n - 2];
      const Laurent r = manifold_residual(y, eps);
      for (const auto& [d, c] : r) {
        if (d <= order) CHECK_MESSAGE(c == Rational(0), "eps " << eps.str() << " order " << order << " degree " << d);
      }
    }
  }
}

TEST_CASE("truncated infinity series solves the manifold equation down to its order") {
  for (const Rational& eps : {Rational(1), Rational(2), Rational(1, 2)}) {
    for (int order = 0; order <= 5; ++order) {
      const auto rho = infinity_coeffs_exact(eps, order);
      Laurent y;
      for (int n = -1; n <= order; ++n) y[-n] = rho[n + 1];
      const Laurent r = manifold_residual(y, eps);
      for (const auto& [d, c] : r) {
        if (d > -order) CHECK_MESSAGE(c == Rational(0), "eps " << eps.str() << " order " << order << " degree " << d);
      }
    }
  }
}

TEST_CASE("origin residual decays at the expected rate") {
  const int order = 6;
  const OriginSeries s = origin_coeffs(Params(1.0), order);
  // Long double keeps the cancellation in the residual well below its size.
  const auto residual = [&](double xd) {
    const long double x = xd, eps = 1.0L;
    long double y = 0, dy = 0;
    for (int n = 2; n <= order; ++n) {
      const long double b = s.coefficient(n);
      y += b * std::pow(x, n);
      dy += n * b * std::pow(x, n - 1);
    }
    return static_cast<double>(eps * x * y * dy - x * x * dy - x * x + y + eps * x * y);
  };
  const double slope = test::loglog_slope(test::linspace(1e-3, 1e-2, 20), residual);
  CHECK(slope >= order + 0.9);
  CHECK(std::abs(residual(1e-2)) <= 1e3 * std::pow(1e-2, order + 1));
}

TEST_CASE("infinity residual decays at the expected rate") {
  const int order = 5;
  const auto rho = infinity_coeffs_exact(Rational(1), order);
  Laurent y;
  for (int n = -1; n <= order; ++n) y[-n] = rho[n + 1];
  const Laurent r = manifold_residual(y, Rational(1));
  const double slope = test::loglog_slope(test::linspace(1e2, 1e3, 20), [&](double x) { return evaluate(r, x); });
  CHECK(slope <= -(order - 1));
}

TEST_CASE("origin evaluation") {
  const OriginSeries s = origin_coeffs(Params(1.0), 40);
  const double x = 1e-4;
  CHECK(std::abs(origin_eval(s, x).value / (x * x) - 1.0) <= 1e-3);
  const AsymptoticEstimate e = origin_eval(origin_coeffs(Params(1.0), 30), 0.5);
  CHECK(e.truncation_index < 30);
  CHECK(e.last_term_magnitude > 0.0);
}

TEST_CASE("infinity evaluation") {
  const Params p(1.0);
  const InfinitySeries s = infinity_coeffs(p, 20);
  const double at50 = infinity_eval(s, 50.0).value;
  CHECK(at50 > inflection_curve(p, 50.0));
  CHECK(at50 < alpha_isocline(p, 50.0));
  CHECK(std::abs(infinity_eval(s, 1e4).value - 1e4 - s.coefficient(0)) <= 1e-3);
  for (int order : {3, 8, 20}) {
    const InfinitySeries t = infinity_coeffs(p, order);
    for (double x : {1e2, 1e3, 1e4}) CHECK(std::abs((alpha_isocline(p, x) - infinity_eval(t, x).value) * x * x) <= 1.0);
  }
}

TEST_CASE("lambert w") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(lambert_w(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(lambert_w(1.0) - 0.56714329040978) <= 1e-12);
  CHECK(lambert_w(-1.0 / std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK_THROWS_AS(lambert_w(-0.5), Error);
  CHECK(lambert_w_exp(std::log(10.0)) == doctest::Approx(lambert_w(10.0)).epsilon(1e-14));
  // W(e^L) for L far beyond the double range: W + ln W = L.
  const double w = lambert_w_exp(1e5);
  CHECK(std::abs(w + std::log(w) - 1e5) <= 1e-9);
}

TEST_CASE("lambert w identity and monotonicity on a log grid") {
  double prev = -1.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const double z = std::pow(10.0, -6.0 + 12.0 * static_cast<double>(i) / 999.0);
    const double w = lambert_w(z);
    REQUIRE(std::abs(w * std::exp(w) - z) <= 1e-12 * std::max(1.0, z));
    REQUIRE(w > prev);
    prev = w;
  }
}

TEST_CASE("comparison function") {
  for (double a : {0.5, 1.0, 2.0}) {
    for (double t0 : {0.0, 1.0, 5.0}) {
      for (double u0 : {1e-3, 1.0, 50.0}) CHECK(std::abs(phi_comparison(t0, a, t0, u0) - u0) <= 1e-12 * u0);
    }
  }
  for (double t : {1.0, 10.0, 100.0}) {
    const double d = 1e-4 * t;
    const double fd = (phi_comparison(t + d, 1.0, 0.0, 1.0) - phi_comparison(t - d, 1.0, 0.0, 1.0)) / (2 * d);
    const double u = phi_comparison(t, 1.0, 0.0, 1.0);
    CHECK(fd == doctest::Approx(-u * u / (1 + u)).epsilon(1e-6));
  }
  for (double a : {0.5, 1.0, 2.0}) {
    const double t = 1e8;
    const double u = phi_comparison(t, a, 1.0, 1.0);
    CHECK(std::abs((u - 1 / t) * t * t / std::log(t) - a) <= 0.05 * a);
  }
  double prev = 3.0;
  for (double t = 0.0; t < 1e6; t = 2 * t + 0.1) {
    const double u = phi_comparison(t, 1.3, 0.0, 2.0);
    CHECK(u > 0.0);
    CHECK(u < prev);
    prev = u;
  }
  CHECK_THROWS_AS(phi_comparison(0.5, 1.0, 1.0, 1.0), Error);
}

TEST_CASE("long-time leading terms") {
  const auto [x0, y0] = longtime_leading(0.0, 100.0);
  CHECK(x0 == doctest::Approx(0.01));
  CHECK(y0 == doctest::Approx(1e-4));
  const double e = std::numbers::e;
  CHECK(longtime_leading(Params(1.0), e).first == doctest::Approx(1 / e + 1 / (e * e)));
  const auto [x6, y6] = longtime_leading(Params(1.0), 1e6);
  CHECK(std::abs(y6 / (x6 * x6) - 1.0) <= 0.1);
}
