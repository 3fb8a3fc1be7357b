#pragma once

// Numerical checks of the qualitative picture: concavity pattern, fence
// switch points, trapping regions, global attraction and long-time rates.
// Each check yields a CheckReport; passed holds iff worst_violation does not
// exceed the report's tolerance.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lindemann/integrators.hpp"
#include "lindemann/kinetics.hpp"
#include "lindemann/slow_manifold.hpp"

namespace lindemann {

struct SampleRecord {
  std::size_t index = 0;
  std::string note;
  std::vector<std::pair<std::string, double>> fields;
};

struct CheckReport {
  std::string name;
  bool passed = false;
  std::size_t samples_tested = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  /// Per-sample records, in input order. Bulk scans keep only failures.
  std::vector<SampleRecord> details;

  void finalize() { passed = worst_violation <= tolerance; }
};

/// Uniform doubles in [0, 1) from the top 53 bits of a 64-bit Mersenne
/// twister, so sequences are identical across standard libraries.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

enum class ConcavityVerdict { ConcaveUp, ConcaveDown, Inflection, UndefinedOnV };

std::string_view to_string(ConcavityVerdict verdict) noexcept;

/// UndefinedOnV within `band` of V, otherwise the sign of h with |h| <= band
/// reported as Inflection.
ConcavityVerdict concavity_at(const Params& p, PhasePoint pt, double band = 1e-12);

enum class FenceClass { StrongLowerFence, StrongUpperFence, Neutral };

std::string_view to_string(FenceClass fc) noexcept;

/// Compares the slope of F(., c) at x with the field value c on it.
FenceClass fence_classify(const Params& p, SlopeValue c, double x, double band = 1e-9);

/// Locates the lower-to-upper fence switch of F(., c) by bisecting on the
/// classifier alone. band = 0 bisects on the bare sign flip.
double fence_switch(const Params& p, SlopeValue c, double band = 0.0);

/// Random points in (0, 10]^2, drawn serially from the seed.
std::vector<PhasePoint> random_inits(std::uint64_t seed, std::size_t n, double side = 10.0);

struct TrappingOptions {
  double t_max = 1e3;
  /// Boundary band in multiples of atol.
  double band_atol = 10.0;
  unsigned threads = 1;
};

/// Entry into and permanence in the nested regions between H and V, H and
/// alpha, and Y and alpha. Non-entry, exits and out-of-order entry times all
/// count as violations.
CheckReport trapping_suite(const Params& p, std::span<const PhasePoint> inits, const IntegratorConfig& cfg,
                           const TrappingOptions& options = {});

/// Envelope |(x, y)| <= 2 (1 + eps) / t at t = t_end. Violations are the
/// ratio of the norm to the envelope; tolerance 1.
CheckReport attraction_suite(const Params& p, std::span<const PhasePoint> inits, const IntegratorConfig& cfg,
                             double t_end = 1e4, unsigned threads = 1);

struct LongtimeCheckpoint {
  double t;
  double x;
  double y;
  double r_x;
  double r_y;
  /// |1/x - 1/x0 - t + eps * integral_0^t y/x ds|
  double residual;
  double integral_y;
};

struct LongtimeProfile {
  std::vector<LongtimeCheckpoint> checkpoints;
  IntegrationStatus status = IntegrationStatus::Completed;
  std::size_t steps = 0;
};

/// Integrates to t_end and records the normalized long-time quantities at
/// `per_decade` log-spaced checkpoints from t = 10.
LongtimeProfile longtime_profile(const Params& p, PhasePoint init, const IntegratorConfig& cfg, double t_end = 1e6,
                                 std::size_t per_decade = 4);

struct LongtimeTolerances {
  double r_x = 0.05;
  double r_y = 0.10;
  /// Integral residual bound as a multiple of t.
  double residual = 1e-3;
};

/// Violations are normalized by their tolerance, so the report tolerance is 1.
CheckReport longtime_suite(const Params& p, PhasePoint init, const IntegratorConfig& cfg, double t_end = 1e6,
                           const LongtimeTolerances& tol = {});

/// Integrator settings used by the long-time check: y falls to about 1e-12
/// by t = 1e6, so the absolute floor has to sit far below that.
IntegratorConfig longtime_config(double rtol = 1e-9);

enum class ConcavityBand { BelowH, HToY, YToM, MToAlpha, AlphaToV, VToUpperRoot, AboveUpperRoot };

std::string_view to_string(ConcavityBand band) noexcept;

/// Expected sign of h in a band: -1 or +1.
int expected_h_sign(ConcavityBand band) noexcept;

/// Samples n_per_region points strictly inside each band, with x log-uniform
/// on [x_lo, x_hi], and counts sign(h) mismatches.
CheckReport table1_scan(const Params& p, const SlowManifold& manifold, std::size_t n_per_region, std::uint64_t seed,
                        double x_lo = 1e-2, double x_hi = 1e2);

/// Finite-difference y'' along the slope field against the closed form p*h,
/// plus the slope bounds -1 < f < 0 below H.
std::vector<CheckReport> concavity_suite(const Params& p, std::size_t n, std::uint64_t seed);

/// Sign flips of the fence classifier against xi(c) at n slopes in (0, 1/eps).
CheckReport fences_suite(const Params& p, std::size_t n);

/// Parallelism of field and slow eigenvector on Y at n_curve points in
/// [0.1, 10], and tau^2 - 4 Delta >= 4 eps x at n_random quadrant points.
std::vector<CheckReport> tangency_suite(const Params& p, std::size_t n_curve, std::size_t n_random,
                                        std::uint64_t seed);

struct SuiteConfig {
  double eps = 1.0;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  IntegratorConfig cfg{};
  std::size_t n_random = 100;
  std::size_t n_table1 = 10000;
};

/// Names accepted by run_suite.
std::span<const std::string_view> suite_names() noexcept;

/// Runs one suite, or all of them for "all". Throws InvalidArgument for
/// unknown names.
std::vector<CheckReport> run_suite(std::string_view name, const SuiteConfig& config);

}  // namespace lindemann
