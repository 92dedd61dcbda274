#include "robinsym/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "robinsym/errors.hpp"

namespace robinsym {

namespace {

// Golden-section search for a minimum of g on [lo, hi].
template <class Fn>
ScanExtremum golden_min(Fn&& g, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double g1 = g(x1);
  double g2 = g(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    if (g1 <= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - kInvPhi * (hi - lo);
      g1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + kInvPhi * (hi - lo);
      g2 = g(x2);
    }
  }
  return g1 <= g2 ? ScanExtremum{g1, x1} : ScanExtremum{g2, x2};
}

// Uniform grid on [0, length] with golden-section polish at each discrete local
// minimum. The grid minimum is always a candidate, so the result never exceeds it.
template <class Fn>
ScanExtremum scan_min(Fn&& g, double length, int samples) {
  if (samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "scan needs at least one sample interval");
  }
  const auto n = static_cast<std::size_t>(samples);
  std::vector<double> r(n + 1);
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    r[i] = length * static_cast<double>(i) / static_cast<double>(n);
    v[i] = g(r[i]);
  }
  ScanExtremum best{v[0], r[0]};
  for (std::size_t i = 1; i <= n; ++i) {
    if (v[i] < best.value) best = {v[i], r[i]};
  }
  for (std::size_t i = 0; i <= n; ++i) {
    const bool left_ok = i == 0 || v[i] <= v[i - 1];
    const bool right_ok = i == n || v[i] <= v[i + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = r[i == 0 ? 0 : i - 1];
    const double hi = r[i == n ? n : i + 1];
    const ScanExtremum polished = golden_min(g, lo, hi);
    if (polished.value < best.value) best = polished;
  }
  return best;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

CounterexampleModel::CounterexampleModel(BallGeometry geom, double beta)
    : geom_(std::move(geom)), beta_(beta) {
  const double br = beta_ * geom_.radius();
  c1_ = 2.0 * br;
  c2_ = -2.0 * (br + 1.0) + geom_.dimension();
  c3_ = 2.0 * (br + 1.0) * geom_.alpha_sq();
  p_ = 1.0 / br;
}

CounterexampleModel CounterexampleModel::derive(const BallGeometry& geom, RobinParameter beta) {
  return CounterexampleModel(geom, beta.value());
}

CounterexampleModel CounterexampleModel::perturbed(Coefficient which, double delta) const {
  CounterexampleModel copy = *this;
  switch (which) {
    case Coefficient::kC1: copy.c1_ += delta; break;
    case Coefficient::kC2: copy.c2_ += delta; break;
    case Coefficient::kC3: copy.c3_ += delta; break;
  }
  return copy;
}

double CounterexampleModel::phi_at_distance(double r) const {
  return std::pow(r * r + alpha_sq(), -beta_r());
}

double CounterexampleModel::dphi_dr(double r) const {
  const double s = r * r + alpha_sq();
  return -2.0 * beta_r() * r * std::pow(s, -beta_r() - 1.0);
}

double CounterexampleModel::laplacian_at_distance(double r) const {
  // Bracket form; smooth at r = 0 where the (n-1)/r phi' form is 0/0.
  const double s = r * r + alpha_sq();
  const double q = beta_r() + 1.0;
  const double bracket = geom_.dimension() - 2.0 * q + q * 2.0 * alpha_sq() / s;
  return -2.0 * beta_r() * std::pow(s, -q) * bracket;
}

void CounterexampleModel::require_in_ball(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != geom_.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has " + std::to_string(x.size()) + " components, expected " +
                    std::to_string(geom_.dimension()));
  }
  if (!geom_.contains(x, boundary_tolerance())) {
    throw Error(ErrorCode::kOutsideDomain,
                "point with |x| = " + std::to_string(norm(x)) + " lies outside the closed ball");
  }
}

double CounterexampleModel::phi(std::span<const double> x) const {
  require_in_ball(x);
  return std::pow(distance_sq(x, geom_.offset()) + alpha_sq(), -beta_r());
}

Point CounterexampleModel::grad_phi(std::span<const double> x) const {
  require_in_ball(x);
  // phi'(r) (x - x0) / r with phi'(r) / r folded into one finite factor.
  const double s = distance_sq(x, geom_.offset()) + alpha_sq();
  const double factor = -2.0 * beta_r() * std::pow(s, -beta_r() - 1.0);
  Point g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = factor * (x[i] - geom_.offset()[i]);
  return g;
}

double CounterexampleModel::laplacian_phi(std::span<const double> x) const {
  require_in_ball(x);
  return laplacian_at_distance(std::sqrt(distance_sq(x, geom_.offset())));
}

double CounterexampleModel::f(double t) const {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::kOutsideDomain, "f is only defined for t > 0, got " + std::to_string(t));
  }
  const double tp = std::pow(t, p_);
  return c1_ * t * (c2_ * tp + c3_ * tp * tp);
}

double CounterexampleModel::pde_residual(std::span<const double> x) const {
  return -laplacian_phi(x) - f(phi(x));
}

double CounterexampleModel::robin_residual(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != geom_.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "boundary point has wrong dimension");
  }
  const double R = geom_.radius();
  const double len = norm(x);
  if (std::abs(len - R) > boundary_tolerance()) {
    throw Error(ErrorCode::kNotOnBoundary,
                "point with |x| = " + std::to_string(len) + " is not on the sphere of radius " +
                    std::to_string(R));
  }
  Point y(x.begin(), x.end());
  if (len != R) {
    for (double& c : y) c *= R / len;
  }
  const Point g = grad_phi(y);
  return dot(g, y) / R + beta_ * phi(y);
}

std::string_view to_string(ConstraintClass c) {
  switch (c) {
    case ConstraintClass::kGuaranteedNonnegative: return "GuaranteedNonnegative";
    case ConstraintClass::kNotGuaranteed: return "NotGuaranteed";
    case ConstraintClass::kNeverNonnegative: return "NeverNonnegative";
  }
  return "unknown";
}

double superharmonic_threshold(const BallGeometry& geom) {
  const double R = geom.radius();
  const double a = geom.offset_norm();
  switch (geom.dimension()) {
    case 1: return 0.0;
    case 2: return (R - a) / (R * (R + a));
    default: return (geom.dimension() - 2.0) / (2.0 * R);
  }
}

ConstraintClass check_superharmonic_constraint(const BallGeometry& geom, RobinParameter beta) {
  if (geom.dimension() == 1) return ConstraintClass::kNeverNonnegative;
  return beta.value() <= superharmonic_threshold(geom) ? ConstraintClass::kGuaranteedNonnegative
                                                       : ConstraintClass::kNotGuaranteed;
}

ScanExtremum nonlinearity_min_scan(const CounterexampleModel& model, int samples) {
  return scan_min([&](double r) { return model.f(model.phi_at_distance(r)); },
                  model.max_distance(), samples);
}

ScanExtremum laplacian_max_scan(const CounterexampleModel& model, int samples) {
  ScanExtremum m = scan_min([&](double r) { return -model.laplacian_at_distance(r); },
                            model.max_distance(), samples);
  m.value = -m.value;
  return m;
}

std::vector<double> sign_change_scan(const CounterexampleModel& model, int grid_intervals,
                                     double tolerance) {
  if (grid_intervals < 1 || !(tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sign_change_scan needs grid >= 1 and tolerance > 0");
  }
  auto g = [&](double r) { return model.f(model.phi_at_distance(r)); };
  const double length = model.max_distance();
  const auto n = static_cast<std::size_t>(grid_intervals);
  auto grid_r = [&](std::size_t i) {
    return length * static_cast<double>(i) / static_cast<double>(n);
  };

  std::vector<double> roots;
  std::size_t last = 0;
  int last_sign = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const int s = sign_of(g(grid_r(i)));
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      double lo = grid_r(last);
      double hi = grid_r(i);
      int lo_sign = last_sign;
      while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        const int ms = sign_of(g(mid));
        if (ms == 0) {
          lo = hi = mid;
          break;
        }
        if (ms == lo_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    last = i;
    last_sign = s;
  }
  return roots;
}

RegionCell evaluate_region_cell(int dimension, double radius, double a, double beta,
                                int samples) {
  const BallGeometry geom = BallGeometry::on_axis(dimension, radius, a);
  const RobinParameter rp(beta);
  const auto model = CounterexampleModel::derive(geom, rp);
  RegionCell cell;
  cell.a = a;
  cell.beta = beta;
  cell.threshold = superharmonic_threshold(geom);
  cell.cls = check_superharmonic_constraint(geom, rp);
  cell.min_f_composed_phi = nonlinearity_min_scan(model, samples).value;
  cell.max_laplacian = laplacian_max_scan(model, samples).value;
  return cell;
}

std::vector<double> direction_cosines(int dimension, int count) {
  if (count < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two directions per radius");
  }
  if (dimension == 1) return {1.0, -1.0};
  std::vector<double> cosines;
  if (dimension == 2) {
    cosines.reserve(static_cast<std::size_t>(count) + 1);
    for (int k = 0; k < count; ++k) {
      if (2 * k == count) {
        cosines.push_back(-1.0);
      } else {
        cosines.push_back(std::cos(2.0 * std::numbers::pi * k / count));
      }
    }
    if (count % 2 == 1) cosines.push_back(-1.0);
    return cosines;
  }
  cosines.reserve(static_cast<std::size_t>(count) + 2);
  cosines.push_back(1.0);
  cosines.push_back(-1.0);
  for (int k = 0; k < count; ++k) cosines.push_back(1.0 - 2.0 * (k + 0.5) / count);
  return cosines;
}

SymmetryDiagnostics asymmetry_metric(const CounterexampleModel& model,
                                     std::span<const double> radii, int directions_per_radius,
                                     double tolerance) {
  const double R = model.radius();
  const double a = model.geometry().offset_norm();
  const std::vector<double> cosines =
      direction_cosines(model.dimension(), directions_per_radius);

  SymmetryDiagnostics diag;
  diag.per_radius.reserve(radii.size());
  for (const double rho : radii) {
    if (!(rho >= 0.0) || rho > R) {
      throw Error(ErrorCode::kInvalidArgument,
                  "asymmetry radius " + std::to_string(rho) + " outside [0, R]");
    }
    RadiusSpread rs;
    rs.radius = rho;
    std::vector<double> values;
    values.reserve(cosines.size());
    for (const double c : cosines) {
      // |rho d - x0|^2 by the law of cosines; collapses to rho^2 when a = 0.
      const double r_sq = std::max(0.0, rho * rho + a * a - 2.0 * rho * a * c);
      values.push_back(std::pow(r_sq + model.alpha_sq(), -model.beta_r()));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    rs.phi_min = *lo;
    rs.phi_max = *hi;
    rs.spread = rs.phi_max - rs.phi_min;
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    for (const double v : values) rs.variance += (v - mean) * (v - mean);
    rs.variance /= static_cast<double>(values.size());

    if (rs.spread > diag.max_asymmetry) {
      diag.max_asymmetry = rs.spread;
      diag.asymmetry_radius = rho;
    }
    diag.radial_variance = std::max(diag.radial_variance, rs.variance);
    diag.per_radius.push_back(rs);
  }
  diag.is_radial = diag.max_asymmetry <= tolerance;
  return diag;
}

}  // namespace robinsym
