#pragma once

// Closed-form non-radial solution of the Robin problem on a ball.
//
// For x0 strictly inside B_R (a = |x0|, alpha^2 = R^2 - a^2) the function
//
//     phi(x) = (|x - x0|^2 + alpha^2)^(-beta R)
//
// satisfies -Lap(phi) = f(phi) in B_R and d(phi)/d(nu) + beta phi = 0 on the
// sphere, with
//
//     f(t) = c1 t (c2 t^p + c3 t^(2p)),   p = 1 / (beta R),
//     c1 = 2 beta R,  c2 = n - 2 (beta R + 1),  c3 = 2 (beta R + 1) alpha^2.
//
// phi is radial about x0, hence not radial about the ball centre when a > 0.

#include <span>
#include <string_view>
#include <vector>

#include "robinsym/geometry.hpp"

namespace robinsym {

class CounterexampleModel {
 public:
  enum class Coefficient { kC1, kC2, kC3 };

  /// Derives c1, c2, c3, alpha^2 and p from the geometry and beta.
  static CounterexampleModel derive(const BallGeometry& geom, RobinParameter beta);

  /// Copy with one coefficient of f shifted by `delta`. phi is unchanged, so the
  /// pair (phi, f) no longer solves the problem; used as a negative control.
  [[nodiscard]] CounterexampleModel perturbed(Coefficient which, double delta) const;

  [[nodiscard]] const BallGeometry& geometry() const noexcept { return geom_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] int dimension() const noexcept { return geom_.dimension(); }
  [[nodiscard]] double radius() const noexcept { return geom_.radius(); }
  [[nodiscard]] double c1() const noexcept { return c1_; }
  [[nodiscard]] double c2() const noexcept { return c2_; }
  [[nodiscard]] double c3() const noexcept { return c3_; }
  [[nodiscard]] double alpha_sq() const noexcept { return geom_.alpha_sq(); }
  /// p = 1 / (beta R)
  [[nodiscard]] double exponent() const noexcept { return p_; }
  /// beta R, the decay power of phi.
  [[nodiscard]] double beta_r() const noexcept { return beta_ * geom_.radius(); }
  /// Largest distance from x0 to a point of the closed ball, R + a.
  [[nodiscard]] double max_distance() const noexcept {
    return geom_.radius() + geom_.offset_norm();
  }

  // Radial profile in r = |x - x0|. Valid for every r >= 0.
  [[nodiscard]] double phi_at_distance(double r) const;
  [[nodiscard]] double dphi_dr(double r) const;
  [[nodiscard]] double laplacian_at_distance(double r) const;

  // Pointwise evaluation. Points must lie in the closed ball up to the boundary
  // tolerance, otherwise Error(kOutsideDomain) is thrown.
  [[nodiscard]] double phi(std::span<const double> x) const;
  [[nodiscard]] Point grad_phi(std::span<const double> x) const;
  [[nodiscard]] double laplacian_phi(std::span<const double> x) const;

  /// f(t) for t > 0; Error(kOutsideDomain) for t <= 0. The continuous
  /// extension has f(0) = 0.
  [[nodiscard]] double f(double t) const;

  /// -Lap(phi)(x) - f(phi(x)) for interior x. Zero up to rounding.
  [[nodiscard]] double pde_residual(std::span<const double> x) const;

  /// grad(phi)(x) . x / R + beta phi(x) for boundary x. Points within
  /// boundary_tolerance() of the sphere are projected onto it first; anything
  /// farther away raises Error(kNotOnBoundary).
  [[nodiscard]] double robin_residual(std::span<const double> x) const;

  [[nodiscard]] double boundary_tolerance() const noexcept { return 1e-9 * geom_.radius(); }

 private:
  CounterexampleModel(BallGeometry geom, double beta);
  void require_in_ball(std::span<const double> x) const;

  BallGeometry geom_;
  double beta_;
  double c1_;
  double c2_;
  double c3_;
  double p_;
};

/// Outcome of the sufficient conditions for f(phi) >= 0 on the whole ball.
enum class ConstraintClass {
  kGuaranteedNonnegative,
  kNotGuaranteed,
  /// n = 1: f(phi) changes sign for every admissible parameter set.
  kNeverNonnegative,
};

std::string_view to_string(ConstraintClass c);

/// beta threshold below which f(phi) >= 0 is guaranteed:
/// (R - a) / (R (R + a)) for n = 2, (n - 2) / (2R) for n >= 3. Zero for n = 1.
double superharmonic_threshold(const BallGeometry& geom);

/// Inclusive comparison against superharmonic_threshold(). Sufficient only:
/// kNotGuaranteed never claims that f(phi) actually goes negative.
ConstraintClass check_superharmonic_constraint(const BallGeometry& geom, RobinParameter beta);

struct ScanExtremum {
  double value = 0.0;
  double distance = 0.0;  ///< r = |x - x0| where the extremum sits
};

/// Minimum of r -> f(phi(r)) over r in [0, R + a]: `samples` uniform intervals,
/// then golden-section refinement inside every discrete local minimum.
ScanExtremum nonlinearity_min_scan(const CounterexampleModel& model, int samples);

/// Maximum of r -> Lap(phi)(r) over [0, R + a], same sampling as above.
ScanExtremum laplacian_max_scan(const CounterexampleModel& model, int samples);

/// Radii in (0, R + a) where f(phi(r)) changes sign, each bracketed on a grid of
/// `grid_intervals` cells and bisected to width `tolerance`. Sorted ascending.
std::vector<double> sign_change_scan(const CounterexampleModel& model,
                                     int grid_intervals = 10000, double tolerance = 1e-10);

/// One (a, beta) cell of the nonnegativity region map, x0 = a e_1.
struct RegionCell {
  double a = 0.0;
  double beta = 0.0;
  double threshold = 0.0;
  ConstraintClass cls = ConstraintClass::kNotGuaranteed;
  double min_f_composed_phi = 0.0;
  double max_laplacian = 0.0;
};

RegionCell evaluate_region_cell(int dimension, double radius, double a, double beta,
                                int samples);

struct RadiusSpread {
  double radius = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  double spread = 0.0;    ///< phi_max - phi_min
  double variance = 0.0;  ///< mean-square deviation from the angular mean
};

struct SymmetryDiagnostics {
  double max_asymmetry = 0.0;
  double asymmetry_radius = 0.0;
  double radial_variance = 0.0;  ///< largest per-radius variance
  bool is_radial = true;
  std::vector<RadiusSpread> per_radius;
};

/// Cosines of the angle between sample directions and x0 (first axis when
/// x0 = 0). Always contains +1 and -1.
///   n = 1: the two directions {+1, -1};
///   n = 2: `count` equi-angular directions starting on the x0 axis;
///   n >= 3: `count` Fibonacci-sphere directions plus the two poles.
std::vector<double> direction_cosines(int dimension, int count);

/// Sweeps phi over sphere |x| = rho for each rho in `radii` and reports how far
/// phi is from being radial about the origin. is_radial <=> max_asymmetry <= tolerance.
SymmetryDiagnostics asymmetry_metric(const CounterexampleModel& model,
                                     std::span<const double> radii, int directions_per_radius,
                                     double tolerance = 1e-12);

}  // namespace robinsym
