#pragma once

// Finite-difference cross-checks that only ever sample a field pointwise. Nothing
// here knows the closed-form derivatives; they are compared against afterwards.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robinsym/counterexample.hpp"
#include "robinsym/geometry.hpp"

namespace robinsym::oracle {

using ScalarField = std::function<double(std::span<const double>)>;

struct StencilConfig {
  double h = 1e-3;
  /// Combine spacings h and h/2: (2^k L_{h/2} - L_h) / (2^k - 1), k = order.
  bool richardson = false;
  /// 2 or 4.
  int order = 2;
};

/// Throws Error(kInvalidArgument) unless h > 0 and order is 2 or 4.
void validate(const StencilConfig& cfg);

/// Central-difference Laplacian. Every stencil point must lie in the closed
/// ball, otherwise Error(kStencilClearance) names the offending offset.
double fd_laplacian(const ScalarField& field, const BallGeometry& ball,
                    std::span<const double> x, const StencilConfig& cfg);

/// Outward normal derivative at a boundary point from inward one-sided
/// differences along -nu: (3/2, -2, 1/2)/h for order 2, the five-point
/// (25, -48, 36, -16, 3)/(12h) rule for order 4.
double fd_normal_derivative(const ScalarField& field, const BallGeometry& ball,
                            std::span<const double> x, const StencilConfig& cfg);

/// Seeded uniform points with |x| <= R - margin. Output depends only on the
/// arguments (mt19937_64 bits are converted to doubles by hand).
std::vector<Point> sample_interior(const BallGeometry& geom, int count, double margin,
                                   std::uint64_t seed);

/// Deterministic quasi-uniform points on the sphere |x| = R: the two endpoints
/// for n = 1, equi-angular for n = 2, a Fibonacci lattice (in the first three
/// coordinates) for n >= 3.
std::vector<Point> sample_boundary(const BallGeometry& geom, int count);

struct OrderEstimate {
  /// log2(|e(h)| / |e(h/2)|); empty when either error sits at the noise floor.
  std::optional<double> order;
  /// Same ratio one level finer, log2(|e(h/2)| / |e(h/4)|).
  std::optional<double> order_fine;
  std::array<double, 3> errors{};  ///< |e| at h, h/2, h/4
  std::array<double, 3> noise_floor{};
};

/// Rounding floor of a Laplacian stencil at spacing h: the larger of
/// 1e-13 max(1, |reference|) and 16 n eps max|field| / h^2.
double laplacian_noise_floor(int dimension, double field_scale, double reference, double h);

/// Observed convergence order of fd_laplacian at x against a closed-form
/// reference value, using spacings h, h/2, h/4 (all must clear the ball).
OrderEstimate convergence_order(const ScalarField& field, const BallGeometry& ball,
                                std::span<const double> x, double h_coarse, double reference,
                                int order = 2);

/// Exact-arithmetic counterpart of residual_audit: closed-form Lap(phi) and
/// grad(phi) at seeded interior points and quasi-uniform boundary points.
struct ClosedFormReport {
  int n_interior = 0;
  int n_boundary = 0;
  /// max |-Lap phi - f(phi)| / max(1, |Lap phi|)
  double max_pde_residual_rel = 0.0;
  /// max |d_nu phi + beta phi| / max(1, beta phi)
  double max_robin_residual_rel = 0.0;
  bool pass = false;  ///< pde <= 1e-10 and robin <= 1e-12
};

ClosedFormReport closed_form_audit(const CounterexampleModel& model, int count,
                                   std::uint64_t seed);

struct AuditOptions {
  /// Pass threshold is tolerance_factor * max|Lap phi| * h^2.
  double tolerance_factor = 100.0;
  /// Re-run the interior sweep at h/2 to report an observed order.
  bool estimate_order = true;
};

struct ResidualReport {
  int n = 0;
  double R = 0.0;
  double a = 0.0;
  double beta = 0.0;
  double h = 0.0;
  int stencil_order = 2;
  bool richardson = false;
  int n_interior = 0;
  int n_boundary = 0;
  double max_pde_residual_fd = 0.0;
  double max_robin_residual_fd = 0.0;
  double laplacian_scale = 0.0;
  double tolerance = 0.0;
  std::optional<double> observed_order;
  bool pass = false;
  std::string diagnostics;
};

/// Samples `count` interior points (margin 3h) and `count` boundary points and
/// measures | -Lap_fd phi - f(phi) | and | d_nu,fd phi + beta phi |. Stencil
/// clearance failures are reported as pass = false with diagnostics.
ResidualReport residual_audit(const CounterexampleModel& model, int count,
                              const StencilConfig& cfg, std::uint64_t seed,
                              const AuditOptions& options = {});

}  // namespace robinsym::oracle
