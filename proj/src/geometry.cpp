#include "robinsym/geometry.hpp"

#include <cmath>
#include <string>

#include "robinsym/errors.hpp"

namespace robinsym {

BallGeometry::BallGeometry(int dimension, double radius, Point offset)
    : dimension_(dimension), radius_(radius), offset_(std::move(offset)) {
  if (dimension_ < 1) {
    throw Error(ErrorCode::kDimensionInvalid,
                "dimension must be >= 1, got " + std::to_string(dimension_));
  }
  if (static_cast<int>(offset_.size()) != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "offset has " + std::to_string(offset_.size()) + " components, expected " +
                    std::to_string(dimension_));
  }
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw Error(ErrorCode::kRadiusNonPositive, "radius must be finite and > 0");
  }
  offset_norm_ = norm(offset_);
  if (!(offset_norm_ < radius_)) {
    throw Error(ErrorCode::kOffsetOutsideBall,
                "offset centre must satisfy |x0| < R (|x0| = " + std::to_string(offset_norm_) +
                    ", R = " + std::to_string(radius_) + ")");
  }
  alpha_sq_ = radius_ * radius_ - offset_norm_ * offset_norm_;
}

BallGeometry BallGeometry::on_axis(int dimension, double radius, double offset_norm) {
  if (dimension < 1) {
    throw Error(ErrorCode::kDimensionInvalid,
                "dimension must be >= 1, got " + std::to_string(dimension));
  }
  if (offset_norm < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "offset norm a must be >= 0");
  }
  Point x0(static_cast<std::size_t>(dimension), 0.0);
  x0[0] = offset_norm;
  return BallGeometry(dimension, radius, std::move(x0));
}

bool BallGeometry::contains(std::span<const double> x, double slack) const {
  return static_cast<int>(x.size()) == dimension_ && norm(x) <= radius_ + slack;
}

RobinParameter::RobinParameter(double beta) : beta_(beta) {
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    throw Error(ErrorCode::kBetaNonPositive, "beta must be finite and > 0");
  }
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double distance_sq(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

}  // namespace robinsym
