#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "lindemann/kinetics.hpp"
#include "lindemann/verification.hpp"

namespace test {

inline bool close(double a, double b, double rel, double abs = 0.0) {
  return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

// Minimal property runner: draws n cases from gen and reports the first
// failing case together with its index and the seed.
template <class T>
void for_all(std::uint64_t seed, std::size_t n, const std::function<T(lindemann::SampleRng&)>& gen,
             const std::function<bool(const T&, std::ostringstream&)>& prop) {
  lindemann::SampleRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const T value = gen(rng);
    std::ostringstream why;
    if (!prop(value, why)) {
      FAIL("case " << i << " (seed " << seed << "): " << why.str());
      return;
    }
  }
}

struct Sample {
  double eps;
  double x;
  double y;
};

// eps log-uniform on [0.1, 10], x log-uniform on [1e-2, 1e2], y uniform in
// the strip between 0 and 2 V(x).
inline Sample quadrant_point(lindemann::SampleRng& rng) {
  Sample s;
  s.eps = rng.log_uniform(0.1, 10.0);
  s.x = rng.log_uniform(1e-2, 1e2);
  s.y = rng.uniform(0.0, 2.0 * s.x / s.eps);
  return s;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Least-squares slope of log|f| against log x.
inline double loglog_slope(const std::vector<double>& xs, const std::function<double(double)>& f) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(xs.size());
  for (double x : xs) {
    const double lx = std::log(x), ly = std::log(std::abs(f(x)));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace test
