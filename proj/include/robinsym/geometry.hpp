#pragma once

#include <span>
#include <vector>

namespace robinsym {

using Point = std::vector<double>;

/// Closed ball B_R centred at the origin in R^n, together with the offset
/// centre x0 about which the counterexample is radial.
class BallGeometry {
 public:
  /// Throws Error with kDimensionInvalid, kDimensionMismatch,
  /// kRadiusNonPositive or kOffsetOutsideBall.
  BallGeometry(int dimension, double radius, Point offset);

  /// Offset placed on the first coordinate axis: x0 = a e_1.
  static BallGeometry on_axis(int dimension, double radius, double offset_norm);

  [[nodiscard]] int dimension() const noexcept { return dimension_; }
  [[nodiscard]] double radius() const noexcept { return radius_; }
  [[nodiscard]] const Point& offset() const noexcept { return offset_; }
  /// a = |x0|
  [[nodiscard]] double offset_norm() const noexcept { return offset_norm_; }
  /// alpha^2 = R^2 - a^2, strictly positive.
  [[nodiscard]] double alpha_sq() const noexcept { return alpha_sq_; }

  [[nodiscard]] bool contains(std::span<const double> x, double slack = 0.0) const;

 private:
  int dimension_;
  double radius_;
  Point offset_;
  double offset_norm_;
  double alpha_sq_;
};

/// Robin boundary parameter beta > 0 (units of 1/length).
class RobinParameter {
 public:
  explicit RobinParameter(double beta);
  [[nodiscard]] double value() const noexcept { return beta_; }

 private:
  double beta_;
};

double norm(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double distance_sq(std::span<const double> x, std::span<const double> y);

}  // namespace robinsym
