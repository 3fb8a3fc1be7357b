#include <cmath>
#include <map>
#include <memory>
#include <vector>

#include <doctest.h>

#include "lindemann/error.hpp"
#include "lindemann/series.hpp"
#include "lindemann/slow_manifold.hpp"
#include "support.hpp"

using namespace lindemann;

namespace {

IntegratorConfig precise() {
  IntegratorConfig cfg;
  cfg.rtol = 1e-12;
  cfg.atol = 1e-14;
  return cfg;
}

// One manifold per eps, shared between test cases.
const SlowManifold& manifold(double eps) {
  static std::map<double, std::unique_ptr<SlowManifold>> cache;
  auto& slot = cache[eps];
  if (!slot) slot = std::make_unique<SlowManifold>(SlowManifold::build(Params(eps), precise()));
  return *slot;
}

}  // namespace

TEST_CASE("brackets") {
  const Params p(1.0);
  const auto [lo, hi] = bracket(p, 1.0);
  CHECK(std::abs(lo - 0.652704) <= 1e-5);
  CHECK(std::abs(hi - 0.666667) <= 1e-5);
  const auto [lo2, hi2] = bracket(p, 1e-2);
  CHECK(hi2 - lo2 < 1e-4);
  const auto [lo3, hi3] = bracket(p, 1e3);
  CHECK(hi3 - lo3 <= 0.5 + 1e-3);
  CHECK_THROWS_AS(bracket(p, 0.0), Error);
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-2, 1e2, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 1e-2);
  CHECK(g[2] == doctest::Approx(1.0));
  CHECK(g.back() == 1e2);
  CHECK(default_grid().size() == 200);
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), Error);
  CHECK_THROWS_AS(log_grid(2.0, 1.0, 3), Error);
}

TEST_CASE("backward shooting") {
  const Params p(1.0);
  const IntegratorConfig cfg;
  const SlowManifoldTable one = compute_backward(p, std::vector<double>{1.0}, cfg);
  REQUIRE(one.size() == 1);
  CHECK(one.values[0] > 0.652704);
  CHECK(one.values[0] < 0.666667);
  CHECK(one.method == ManifoldMethod::Backward);
  CHECK(one.est_error[0] >= 0.0);

  const SlowManifoldTable ten = compute_backward(p, std::vector<double>{10.0}, cfg);
  CHECK(std::abs(ten.values[0] - infinity_eval(infinity_coeffs(p, 8), 10.0).value) <= 1e-6);

  const std::vector<double> grid = log_grid(0.1, 50.0, 12);
  const SlowManifoldTable a = compute_backward(p, grid, cfg, 0.1);
  const SlowManifoldTable b = compute_backward(p, grid, cfg, 0.9);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) <= 2 * a.est_error[i]);

  CHECK_THROWS_AS(compute_backward(p, std::vector<double>{}, cfg), Error);
  CHECK_THROWS_AS(compute_backward(p, std::vector<double>{2.0, 1.0}, cfg), Error);
  CHECK_THROWS_AS(compute_backward(p, std::vector<double>{-1.0, 1.0}, cfg), Error);
}

TEST_CASE("bisection classification and agreement") {
  const Params p(1.0);
  const IntegratorConfig cfg;
  const double span = default_span(p);
  CHECK(classify_start(p, 1.0, horizontal_isocline(p, 1.0), span, cfg) == Side::Below);
  CHECK(classify_start(p, 1.0, alpha_isocline(p, 1.0), span, cfg) == Side::Above);
  CHECK(classify_start(p, 1.0, 0.653, span, cfg) == Side::Below);
  CHECK(classify_start(p, 1.0, 0.666, span, cfg) == Side::Above);

  const double bis = compute_bisection(p, 1.0, 1e-8, cfg);
  const double back = compute_backward(p, std::vector<double>{1.0}, cfg).values[0];
  CHECK(std::abs(bis - back) <= 1e-7);
  CHECK_THROWS_AS(compute_bisection(p, 1.0, 0.0, cfg), Error);
}

TEST_CASE("bisection tables do not depend on the thread count") {
  const Params p(2.0);
  const std::vector<double> grid = log_grid(0.05, 20.0, 9);
  const SlowManifoldTable a = compute_bisection_table(p, grid, 1e-9, {}, 1);
  const SlowManifoldTable b = compute_bisection_table(p, grid, 1e-9, {}, 4);
  CHECK(a.values == b.values);
  CHECK(a.method == ManifoldMethod::Bisection);
}

TEST_CASE("blended evaluation near the ends") {
  const Params p(1.0);
  const SlowManifold& m = manifold(1.0);
  const double x = 1e-3;
  CHECK(std::abs((m(x) - horizontal_isocline(p, x)) / (x * x * x) - 2.0) <= 0.4);
  for (double xl : log_grid(1e2, 1e4, 21)) CHECK(std::abs(m(xl) - alpha_isocline(p, xl)) * xl * xl <= 1.0);
  const double d0 = 1e-7;
  CHECK(std::abs((m(2 * d0) - m(d0)) / d0) < 1e-6);
  CHECK(std::abs((m(1e4 + 1.0) - m(1e4 - 1.0)) / 2.0 - 1.0) <= 1e-3);
  CHECK(m.seam_mismatch().first <= 1e-6);
  CHECK(m.seam_mismatch().second <= 1e-6);
  CHECK_THROWS_AS(m(0.0), Error);
}

TEST_CASE("one-shot evaluation matches the blended manifold") {
  const Params p(1.0);
  const SlowManifold& m = manifold(1.0);
  const OriginSeries o = origin_coeffs(p, 40);
  const InfinitySeries i = infinity_coeffs(p, 20);
  for (double x : {1e-3, 0.5, 3.0, 5e3}) CHECK(evaluate(p, x, m.table(), o, i) == m(x));
  SlowManifoldTable tiny = compute_backward(p, std::vector<double>{1.0}, {});
  CHECK_THROWS_AS(evaluate(p, 1.0, tiny, o, i), Error);
}

TEST_CASE("seam mismatch is reported") {
  const Params p(1.0);
  SlowManifoldTable t = manifold(1.0).table();
  for (double& v : t.values) v += 1e-3;
  try {
    SlowManifold bad(p, t, origin_coeffs(p, 40), infinity_coeffs(p, 20));
    FAIL("expected SeamMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SeamMismatch);
  }
}

TEST_CASE("property: sandwich, monotonicity and convexity") {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const Params p(eps);
    const SlowManifold& m = manifold(eps);
    std::size_t strict = 0, unresolved = 0;
    double prev = 0.0;
    for (double x : log_grid(1e-2, 1e4, 601)) {
      const auto [lo, hi] = bracket(p, x);
      const double v = m(x);
      if (std::nextafter(lo, hi) < hi) {
        CHECK_MESSAGE((lo < v && v < hi), "eps " << eps << " x " << x);
        ++strict;
      } else {
        // No double lies strictly between the brackets.
        CHECK((lo <= v && v <= hi));
        ++unresolved;
      }
      CHECK_MESSAGE(v > prev, "eps " << eps << " x " << x);
      prev = v;
    }
    CHECK(strict > 500);
    MESSAGE("eps " << eps << ": " << unresolved << " points where the bracket is below double resolution");

    for (double x : log_grid(1e-2, 1e4, 61)) {
      const double h = 0.05 * x;
      for (int k = -1; k <= 1; ++k) {
        const double c = x + k * h;
        CHECK_MESSAGE(m(c + h) - 2 * m(c) + m(c - h) > 0.0, "eps " << eps << " x " << c);
      }
    }
  }
}

TEST_CASE("property: tabulated values solve the scalar equation") {
  const IntegratorConfig cfg = precise();
  test::for_all<std::pair<double, double>>(
      31, 30, [](SampleRng& rng) { return std::pair{rng.log_uniform(0.1, 10.0), rng.log_uniform(2e-2, 50.0)}; },
      [&](const std::pair<double, double>& s, std::ostringstream& why) {
        const auto [eps, x] = s;
        const Params p(eps);
        const double d = 1e-3 * x;
        const SlowManifoldTable t = compute_backward(p, std::vector<double>{x - d, x, x + d}, cfg);
        const double fd = (t.values[2] - t.values[0]) / (2 * d);
        const double f = scalar_slope(p, {x, t.values[1]});
        why << "eps " << eps << " x " << x << " fd " << fd << " f " << f;
        return std::abs(fd - f) <= 1e-4;
      });
}

TEST_CASE("property: isoclines past their fence switch stay below the manifold") {
  test::for_all<std::pair<double, double>>(
      32, 500, [](SampleRng& rng) { return std::pair{rng.uniform(0.01, 0.99), rng.log_uniform(1e-3, 1e2)}; },
      [](const std::pair<double, double>& s, std::ostringstream& why) {
        const auto [u, stretch] = s;
        for (double eps : {0.5, 1.0, 2.0}) {
          const Params p(eps);
          const double c = u / eps;
          const double x = xi(p, SlopeValue(c)) * (1 + stretch);
          if (x < 1e-2 || x > 1e4) continue;
          const double f = isocline(p, Isocline::F(c), x);
          if (!(f < manifold(eps)(x))) {
            why << "eps " << eps << " c " << c << " x " << x << " F " << f << " M " << manifold(eps)(x);
            return false;
          }
        }
        return true;
      });
}
