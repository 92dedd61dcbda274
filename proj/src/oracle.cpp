#include "robinsym/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "robinsym/errors.hpp"

namespace robinsym::oracle {

namespace {

constexpr double kClearanceSlack = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string offset_name(int k, std::size_t axis) {
  std::string s = k > 0 ? "+" : "-";
  if (std::abs(k) != 1) s += std::to_string(std::abs(k));
  return s + "h*e" + std::to_string(axis + 1);
}

// Half-width of the central stencil, in units of h.
int half_width(int order) { return order == 4 ? 2 : 1; }

void check_clearance(const BallGeometry& ball, std::span<const double> x, double h, int order) {
  if (static_cast<int>(x.size()) != ball.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "stencil centre has wrong dimension");
  }
  Point p(x.begin(), x.end());
  const double limit = ball.radius() * (1.0 + kClearanceSlack);
  for (std::size_t axis = 0; axis < x.size(); ++axis) {
    for (int k = -half_width(order); k <= half_width(order); ++k) {
      if (k == 0) continue;
      p[axis] = x[axis] + k * h;
      const double len = norm(p);
      p[axis] = x[axis];
      if (len > limit) {
        throw Error(ErrorCode::kStencilClearance,
                    "stencil offset " + offset_name(k, axis) + " (h = " + std::to_string(h) +
                        ") leaves the ball: |x + offset| = " + std::to_string(len) +
                        " > R = " + std::to_string(ball.radius()));
      }
    }
  }
}

double laplacian_at_spacing(const ScalarField& field, std::span<const double> x, double h,
                            int order) {
  Point p(x.begin(), x.end());
  auto at = [&](std::size_t axis, int k) {
    p[axis] = x[axis] + k * h;
    const double v = field(p);
    p[axis] = x[axis];
    return v;
  };
  const double centre = field(x);
  double sum = 0.0;
  for (std::size_t axis = 0; axis < x.size(); ++axis) {
    if (order == 2) {
      sum += (at(axis, 1) - 2.0 * centre + at(axis, -1)) / (h * h);
    } else {
      sum += (-at(axis, 2) + 16.0 * at(axis, 1) - 30.0 * centre + 16.0 * at(axis, -1) -
              at(axis, -2)) /
             (12.0 * h * h);
    }
  }
  return sum;
}

double normal_derivative_at_spacing(const ScalarField& field, std::span<const double> y,
                                    std::span<const double> nu, double h, int order) {
  Point p(y.size());
  auto at = [&](int k) {
    for (std::size_t i = 0; i < y.size(); ++i) p[i] = y[i] - k * h * nu[i];
    return field(p);
  };
  if (order == 2) return (1.5 * at(0) - 2.0 * at(1) + 0.5 * at(2)) / h;
  return (25.0 * at(0) - 48.0 * at(1) + 36.0 * at(2) - 16.0 * at(3) + 3.0 * at(4)) / (12.0 * h);
}

double richardson_weight(int order) { return order == 4 ? 16.0 : 4.0; }

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void validate(const StencilConfig& cfg) {
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) {
    throw Error(ErrorCode::kInvalidArgument, "stencil step h must be finite and > 0");
  }
  if (cfg.order != 2 && cfg.order != 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "stencil order must be 2 or 4, got " + std::to_string(cfg.order));
  }
}

double fd_laplacian(const ScalarField& field, const BallGeometry& ball,
                    std::span<const double> x, const StencilConfig& cfg) {
  validate(cfg);
  check_clearance(ball, x, cfg.h, cfg.order);
  const double coarse = laplacian_at_spacing(field, x, cfg.h, cfg.order);
  if (!cfg.richardson) return coarse;
  const double fine = laplacian_at_spacing(field, x, 0.5 * cfg.h, cfg.order);
  const double w = richardson_weight(cfg.order);
  return (w * fine - coarse) / (w - 1.0);
}

double fd_normal_derivative(const ScalarField& field, const BallGeometry& ball,
                            std::span<const double> x, const StencilConfig& cfg) {
  validate(cfg);
  if (static_cast<int>(x.size()) != ball.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "boundary point has wrong dimension");
  }
  const double R = ball.radius();
  const double len = norm(x);
  if (std::abs(len - R) > 1e-9 * R) {
    throw Error(ErrorCode::kNotOnBoundary,
                "normal derivative requested at |x| = " + std::to_string(len) +
                    ", sphere radius " + std::to_string(R));
  }
  const int depth = cfg.order == 4 ? 4 : 2;
  if (depth * cfg.h >= 2.0 * R) {
    throw Error(ErrorCode::kStencilClearance,
                "one-sided stencil offset -" + std::to_string(depth) + "h*nu (h = " +
                    std::to_string(cfg.h) + ") reaches past the ball diameter " +
                    std::to_string(2.0 * R));
  }
  Point y(x.begin(), x.end());
  Point nu(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = x[i] * (R / len);
    nu[i] = x[i] / len;
  }
  const double coarse = normal_derivative_at_spacing(field, y, nu, cfg.h, cfg.order);
  if (!cfg.richardson) return coarse;
  const double fine = normal_derivative_at_spacing(field, y, nu, 0.5 * cfg.h, cfg.order);
  const double w = richardson_weight(cfg.order);
  return (w * fine - coarse) / (w - 1.0);
}

std::vector<Point> sample_interior(const BallGeometry& geom, int count, double margin,
                                   std::uint64_t seed) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  }
  if (!(margin >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "margin must be >= 0");
  }
  const double rho = geom.radius() - margin;
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::kEmptyDomain,
                "margin " + std::to_string(margin) + " leaves no interior in a ball of radius " +
                    std::to_string(geom.radius()));
  }
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::size_t>(geom.dimension());
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(count));
  Point p(n);
  while (points.size() < static_cast<std::size_t>(count)) {
    for (double& c : p) c = rho * (2.0 * unit_uniform(rng) - 1.0);
    if (norm(p) <= rho) points.push_back(p);
  }
  return points;
}

std::vector<Point> sample_boundary(const BallGeometry& geom, int count) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  }
  const double R = geom.radius();
  const auto n = static_cast<std::size_t>(geom.dimension());
  std::vector<Point> points;
  if (n == 1) return {Point{-R}, Point{R}};
  points.reserve(static_cast<std::size_t>(count));
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * k / count;
      points.push_back(Point{R * std::cos(t), R * std::sin(t)});
    }
    return points;
  }
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / count;
    const double ring = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double t = golden_angle * k;
    Point p(n, 0.0);
    p[0] = R * z;
    p[1] = R * ring * std::cos(t);
    p[2] = R * ring * std::sin(t);
    points.push_back(std::move(p));
  }
  return points;
}

double laplacian_noise_floor(int dimension, double field_scale, double reference, double h) {
  return std::max(1e-13 * std::max(1.0, std::abs(reference)),
                  16.0 * dimension * kEps * std::abs(field_scale) / (h * h));
}

OrderEstimate convergence_order(const ScalarField& field, const BallGeometry& ball,
                                std::span<const double> x, double h_coarse, double reference,
                                int order) {
  const StencilConfig base{h_coarse, false, order};
  validate(base);
  check_clearance(ball, x, h_coarse, order);

  double field_scale = std::abs(field(x));
  {
    Point p(x.begin(), x.end());
    for (std::size_t axis = 0; axis < x.size(); ++axis) {
      for (int k = -half_width(order); k <= half_width(order); ++k) {
        p[axis] = x[axis] + k * h_coarse;
        field_scale = std::max(field_scale, std::abs(field(p)));
      }
      p[axis] = x[axis];
    }
  }

  OrderEstimate est;
  double h = h_coarse;
  for (std::size_t level = 0; level < 3; ++level, h *= 0.5) {
    const StencilConfig cfg{h, false, order};
    est.errors[level] = std::abs(fd_laplacian(field, ball, x, cfg) - reference);
    est.noise_floor[level] = laplacian_noise_floor(ball.dimension(), field_scale, reference, h);
  }
  auto ratio = [&](std::size_t i) -> std::optional<double> {
    if (est.errors[i] <= est.noise_floor[i] || est.errors[i + 1] <= est.noise_floor[i + 1]) {
      return std::nullopt;
    }
    return std::log2(est.errors[i] / est.errors[i + 1]);
  };
  est.order = ratio(0);
  est.order_fine = ratio(1);
  return est;
}

ClosedFormReport closed_form_audit(const CounterexampleModel& model, int count,
                                   std::uint64_t seed) {
  ClosedFormReport report;
  const auto interior = sample_interior(model.geometry(), count, 0.0, seed);
  report.n_interior = static_cast<int>(interior.size());
  for (const Point& p : interior) {
    const double scale = std::max(1.0, std::abs(model.laplacian_phi(p)));
    report.max_pde_residual_rel =
        std::max(report.max_pde_residual_rel, std::abs(model.pde_residual(p)) / scale);
  }
  const auto boundary = sample_boundary(model.geometry(), count);
  report.n_boundary = static_cast<int>(boundary.size());
  for (const Point& b : boundary) {
    const double scale = std::max(1.0, model.beta() * model.phi(b));
    report.max_robin_residual_rel =
        std::max(report.max_robin_residual_rel, std::abs(model.robin_residual(b)) / scale);
  }
  report.pass = report.max_pde_residual_rel <= 1e-10 && report.max_robin_residual_rel <= 1e-12;
  return report;
}

ResidualReport residual_audit(const CounterexampleModel& model, int count,
                              const StencilConfig& cfg, std::uint64_t seed,
                              const AuditOptions& options) {
  validate(cfg);
  if (count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "audit sample count must be >= 1");
  }
  const BallGeometry& geom = model.geometry();
  ResidualReport report;
  report.n = geom.dimension();
  report.R = geom.radius();
  report.a = geom.offset_norm();
  report.beta = model.beta();
  report.h = cfg.h;
  report.stencil_order = cfg.order;
  report.richardson = cfg.richardson;

  const ScalarField field = [&model](std::span<const double> x) { return model.phi(x); };

  try {
    const std::vector<Point> interior = sample_interior(geom, count, 3.0 * cfg.h, seed);
    report.n_interior = static_cast<int>(interior.size());
    double phi_scale = 0.0;
    for (const Point& p : interior) {
      const double phi = model.phi(p);
      const double lap_fd = fd_laplacian(field, geom, p, cfg);
      report.max_pde_residual_fd =
          std::max(report.max_pde_residual_fd, std::abs(-lap_fd - model.f(phi)));
      report.laplacian_scale = std::max(report.laplacian_scale, std::abs(model.laplacian_phi(p)));
      phi_scale = std::max(phi_scale, phi);
    }

    if (options.estimate_order) {
      StencilConfig half = cfg;
      half.h = 0.5 * cfg.h;
      double max_half = 0.0;
      for (const Point& p : interior) {
        const double lap_fd = fd_laplacian(field, geom, p, half);
        max_half = std::max(max_half, std::abs(-lap_fd - model.f(model.phi(p))));
      }
      const double floor_coarse =
          laplacian_noise_floor(report.n, phi_scale, report.laplacian_scale, cfg.h);
      const double floor_fine =
          laplacian_noise_floor(report.n, phi_scale, report.laplacian_scale, half.h);
      if (report.max_pde_residual_fd > floor_coarse && max_half > floor_fine) {
        report.observed_order = std::log2(report.max_pde_residual_fd / max_half);
      }
    }

    const std::vector<Point> boundary = sample_boundary(geom, count);
    report.n_boundary = static_cast<int>(boundary.size());
    for (const Point& b : boundary) {
      const double dn = fd_normal_derivative(field, geom, b, cfg);
      report.max_robin_residual_fd =
          std::max(report.max_robin_residual_fd, std::abs(dn + model.beta() * model.phi(b)));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStencilClearance && e.code() != ErrorCode::kEmptyDomain) throw;
    report.pass = false;
    report.diagnostics = e.what();
    return report;
  }

  report.tolerance = options.tolerance_factor * report.laplacian_scale * cfg.h * cfg.h;
  report.pass = report.max_pde_residual_fd <= report.tolerance &&
                report.max_robin_residual_fd <= report.tolerance;
  if (!report.pass) {
    report.diagnostics = "residual exceeds tolerance " + std::to_string(report.tolerance);
  }
  return report;
}

}  // namespace robinsym::oracle
