#include "robinsym/bvp1d.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace robinsym::bvp1d {

namespace {

struct Trajectory {
  std::vector<double> u;
  std::vector<double> du;
};

double node(double R, int i, int steps) {
  return -R + 2.0 * R * static_cast<double>(i) / static_cast<double>(steps);
}

// Classical RK4 for (u, v)' = (v, -f(u)) from x = -R with u = s, v = beta s.
// Returns nullopt on blow-up or a non-finite state.
std::optional<Trajectory> integrate(const Problem& p, double s, const SolveOptions& opt,
                                    bool keep_samples) {
  const double h = 2.0 * p.R / opt.steps;
  double u = s;
  double v = p.beta * s;
  Trajectory t;
  if (keep_samples) {
    t.u.reserve(static_cast<std::size_t>(opt.steps) + 1);
    t.du.reserve(static_cast<std::size_t>(opt.steps) + 1);
    t.u.push_back(u);
    t.du.push_back(v);
  }
  for (int i = 0; i < opt.steps; ++i) {
    const double k1u = v;
    const double k1v = -p.f(u);
    const double k2u = v + 0.5 * h * k1v;
    const double k2v = -p.f(u + 0.5 * h * k1u);
    const double k3u = v + 0.5 * h * k2v;
    const double k3v = -p.f(u + 0.5 * h * k2u);
    const double k4u = v + h * k3v;
    const double k4v = -p.f(u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > opt.blowup_threshold) {
      return std::nullopt;
    }
    if (keep_samples) {
      t.u.push_back(u);
      t.du.push_back(v);
    }
  }
  if (!keep_samples) {
    t.u.push_back(u);
    t.du.push_back(v);
  }
  return t;
}

std::optional<double> right_residual(const Problem& p, double s, const SolveOptions& opt) {
  const auto t = integrate(p, s, opt, false);
  if (!t) return std::nullopt;
  return t->du.back() + p.beta * t->u.back();
}

void validate(const Problem& p, double tol, const SolveOptions& opt) {
  if (!(p.R > 0.0) || !std::isfinite(p.R)) {
    throw Error(ErrorCode::kInvalidArgument, "half-length R must be finite and > 0");
  }
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be finite and > 0");
  }
  if (!p.f) throw Error(ErrorCode::kInvalidArgument, "right-hand side f is not set");
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be > 0");
  if (opt.steps < 2 || opt.steps % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "step count must be even and >= 2");
  }
}

std::string fmt_residual(double g) {
  std::ostringstream os;
  os.precision(6);
  os << g;
  return os.str();
}

}  // namespace

Solution solve(const Problem& problem, double init_guess, double tol,
               const SolveOptions& options) {
  validate(problem, tol, options);

  double s = init_guess;
  auto g = right_residual(problem, s, options);
  if (!g) {
    throw Error(ErrorCode::kDivergence,
                "trajectory from initial guess u(-R) = " + fmt_residual(s) + " blows up");
  }
  int iters = 0;
  while (std::abs(*g) > tol) {
    if (iters == options.max_newton_iterations) {
      throw NoConvergenceError("Newton shooting did not converge in " +
                                   std::to_string(iters) + " iterations; last |g| = " +
                                   fmt_residual(std::abs(*g)),
                               *g);
    }
    ++iters;
    const double ds = std::max(1e-7, 1e-7 * std::abs(s));
    const auto g_shift = right_residual(problem, s + ds, options);
    if (!g_shift) {
      throw Error(ErrorCode::kDivergence, "trajectory blows up near u(-R) = " + fmt_residual(s));
    }
    const double slope = (*g_shift - *g) / ds;
    if (slope == 0.0 || !std::isfinite(slope)) {
      throw NoConvergenceError("shooting residual has zero slope at u(-R) = " + fmt_residual(s),
                               *g);
    }
    double step = -*g / slope;
    std::optional<double> g_next;
    for (int halvings = 0; halvings < 30; ++halvings, step *= 0.5) {
      g_next = right_residual(problem, s + step, options);
      if (g_next) break;
    }
    if (!g_next) {
      throw Error(ErrorCode::kDivergence,
                  "every damped Newton step from u(-R) = " + fmt_residual(s) + " blows up");
    }
    s += step;
    g = g_next;
  }

  const auto traj = integrate(problem, s, options, true);
  if (!traj) throw Error(ErrorCode::kDivergence, "converged trajectory blows up");

  Solution sol;
  sol.nodes.resize(static_cast<std::size_t>(options.steps) + 1);
  for (int i = 0; i <= options.steps; ++i) {
    sol.nodes[static_cast<std::size_t>(i)] = node(problem.R, i, options.steps);
  }
  sol.u = traj->u;
  sol.du = traj->du;
  sol.shooting_param = s;
  sol.newton_iters = iters;
  sol.bc_left = -sol.du.front() + problem.beta * sol.u.front();
  sol.bc_right = sol.du.back() + problem.beta * sol.u.back();
  return sol;
}

double interpolate(const Solution& solution, double x) {
  const auto& xs = solution.nodes;
  if (xs.size() < 2 || x < xs.front() || x > xs.back()) {
    throw Error(ErrorCode::kOutsideDomain, "interpolation point outside the solution interval");
  }
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t k = it == xs.end() ? xs.size() - 2 : static_cast<std::size_t>(it - xs.begin()) - 1;
  const double h = xs[k + 1] - xs[k];
  const double t = (x - xs[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * solution.u[k] + h10 * h * solution.du[k] + h01 * solution.u[k + 1] +
         h11 * h * solution.du[k + 1];
}

SymmetryReport diagnose(const Solution& solution, double zero_tol) {
  SymmetryReport r;
  const auto& xs = solution.nodes;
  const auto& u = solution.u;
  r.min_value = *std::min_element(u.begin(), u.end());
  const auto max_it = std::max_element(u.begin(), u.end());
  r.max_value = *max_it;
  r.argmax = xs[static_cast<std::size_t>(max_it - u.begin())];
  r.positive = r.min_value > zero_tol;
  r.endpoint_defect = std::abs(u.back() - u.front());

  r.monotone_decreasing_right = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.symmetry_defect = std::max(r.symmetry_defect, std::abs(u[i] - interpolate(solution, -xs[i])));
    if (xs[i] > 0.0 && !(solution.du[i] < 0.0)) r.monotone_decreasing_right = false;
  }
  return r;
}

TheoremCheck verify_symmetry_theorem(const Problem& problem, double init_guess, double tol,
                                     double evenness_tol, const SolveOptions& options) {
  if (!problem.claims_nonnegative) {
    throw Error(ErrorCode::kInvalidArgument,
                "symmetry check requires a right-hand side claimed nonnegative");
  }
  TheoremCheck check;
  check.solution = solve(problem, init_guess, tol, options);
  check.report = diagnose(check.solution);

  constexpr int kProbe = 257;
  const double lo = check.report.min_value;
  const double hi = check.report.max_value;
  bool any_nonzero = false;
  for (int i = 0; i < kProbe; ++i) {
    const double t = lo + (hi - lo) * i / (kProbe - 1);
    const double ft = problem.f(t);
    if (ft < 0.0) {
      throw Error(ErrorCode::kHypothesisViolation,
                  "f(" + fmt_residual(t) + ") = " + fmt_residual(ft) +
                      " < 0 on the solution range");
    }
    any_nonzero = any_nonzero || ft != 0.0;
  }
  if (!any_nonzero) {
    throw Error(ErrorCode::kHypothesisViolation, "f vanishes identically on the solution range");
  }

  check.even = check.report.symmetry_defect <= evenness_tol;
  check.positive = check.report.positive;
  check.monotone = check.report.monotone_decreasing_right;
  if (!check.even) {
    check.failures.push_back("symmetry defect " + fmt_residual(check.report.symmetry_defect) +
                             " exceeds " + fmt_residual(evenness_tol));
  }
  if (!check.positive) check.failures.emplace_back("solution is not strictly positive");
  if (!check.monotone) check.failures.emplace_back("u' is not negative on (0, R]");
  check.pass = check.failures.empty();
  return check;
}

}  // namespace robinsym::bvp1d
