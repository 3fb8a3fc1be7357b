#pragma once

// Closed-form objects of the dimensionless Lindemann system
//
//   x' = -x^2 + eps*x*y,   y' = x^2 - (1 + eps*x)*y
//
// and of its scalar reduction dy/dx = f(x, y): the vector field, the slope
// field, the isocline family F(x, c), the fence switch function xi(c), the
// concavity auxiliaries h and p, the inflection curve and the eigenstructure
// of the linearization.

#include <string_view>
#include <vector>

namespace lindemann {

/// The single dimensionless parameter eps = k_{-1}/k_1 of the system.
class Params {
 public:
  /// Throws Error(InvalidArgument) unless eps is finite and positive.
  explicit Params(double eps);

  double eps() const noexcept { return eps_; }

 private:
  double eps_;
};

/// A point of the (x, y) phase plane. The domain of interest is the closed
/// nonnegative quadrant; use checked() where that has to be enforced.
struct PhasePoint {
  double x = 0.0;
  double y = 0.0;

  static PhasePoint checked(double x, double y);
  bool in_quadrant() const noexcept { return x >= 0.0 && y >= 0.0; }
};

/// Slope parameter of an isocline.
struct SlopeValue {
  double c = 0.0;

  constexpr explicit SlopeValue(double value) : c(value) {}
};

struct Velocity {
  double dx = 0.0;
  double dy = 0.0;
};

struct TangentData {
  double trace = 0.0;
  double det = 0.0;
  /// trace^2 - 4 det, evaluated in the sum-of-squares form that is >= 4 eps x.
  double discriminant = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;
};

/// Position of a point relative to the ordered boundaries H < Y < alpha < V.
enum class RegionLabel {
  BelowH,
  OnH,
  BetweenHAndY,
  OnY,
  BetweenYAndAlpha,
  OnAlpha,
  BetweenAlphaAndV,
  OnV,
  AboveV,
};

std::string_view to_string(RegionLabel label) noexcept;

enum class IsoclineKind { Horizontal, Vertical, Alpha, Slope };

/// Selects one member of the isocline family.
struct Isocline {
  IsoclineKind kind = IsoclineKind::Horizontal;
  double c = 0.0;  // used by IsoclineKind::Slope only

  static constexpr Isocline H() { return {IsoclineKind::Horizontal, 0.0}; }
  static constexpr Isocline V() { return {IsoclineKind::Vertical, 0.0}; }
  static constexpr Isocline Alpha() { return {IsoclineKind::Alpha, 0.0}; }
  static constexpr Isocline F(double c) { return {IsoclineKind::Slope, c}; }
};

Velocity vector_field(const Params& p, PhasePoint pt) noexcept;

/// f(x, y) = g2/g1. Throws DenominatorZero when x == 0 or the point is on V.
double scalar_slope(const Params& p, PhasePoint pt);

/// Partial derivative of f with respect to y, 1/(x - eps*y)^2 off V.
double scalar_slope_dy(const Params& p, PhasePoint pt);

/// K(c) = 1/(1 + c). Throws PoleAtMinusOne for c == -1.
double k_of_c(SlopeValue c);

/// Height of the requested isocline at x > 0. Throws PoleAtX at the vertical
/// asymptote of F(., c) and OutOfDomain for x <= 0.
double isocline(const Params& p, Isocline which, double x);

double horizontal_isocline(const Params& p, double x) noexcept;  // H
double vertical_isocline(const Params& p, double x) noexcept;    // V
double alpha_isocline(const Params& p, double x) noexcept;       // alpha

/// Closed-form x-derivative of F(x, c).
double isocline_derivative(const Params& p, SlopeValue c, double x);

/// xi(c), the abscissa where F(., c) turns from a strong lower into a strong
/// upper fence. Defined for 0 < c < 1/eps, OutOfDomain otherwise.
double xi(const Params& p, SlopeValue c);

/// d xi / dc on (0, 1/eps).
double xi_derivative(const Params& p, SlopeValue c);

/// The unique c in (0, 1/eps) with xi(c) = x, for x > 0.
SlopeValue xi_inverse(const Params& p, double x, double rel_tol = 1e-12);

/// h(x, y) = x^2 f(x, y) + y (eps y - 2x); sign(y'') = sign(h) off V.
double h_aux(const Params& p, PhasePoint pt);

/// p(x, y) = 1 / (x^2 (eps y - x)^2).
double p_aux(const Params& p, PhasePoint pt);

/// Left side of the inflection cubic
///   eps^2 y^3 - 3 eps x y^2 + (2x^2 - eps x^2 - x) y + x^3.
double inflection_cubic(const Params& p, double x, double y) noexcept;

/// The inflection curve Y(x) = F(x, xi^{-1}(x)) lying between H and alpha.
double inflection_curve(const Params& p, double x);

/// All three real roots of the inflection cubic at x > 0, ascending.
/// Throws DegenerateRoots if the discriminant is numerically zero.
std::vector<double> inflection_cubic_roots(const Params& p, double x);

/// Trace, determinant, eigenvalues and eigenvector slopes of the Jacobian at
/// pt. Throws OutOfDomain if x <= 0.
TangentData slow_tangent(const Params& p, PhasePoint pt);

struct Nondimensional {
  Params params;
  PhasePoint initial;
  /// k2: dimensionless time is t = k2 * tau.
  double time_scale;
};

/// Maps rate constants and initial concentrations onto (eps, x0, y0).
/// Throws NonpositiveRate unless k1, km1, k2 > 0 and a0, b0 >= 0.
Nondimensional nondimensionalize(double k1, double km1, double k2, double a0, double b0);

/// Classifies pt against H < Y < alpha < V using an absolute band in y.
RegionLabel classify_region(const Params& p, PhasePoint pt, double band = 1e-9);

}  // namespace lindemann
