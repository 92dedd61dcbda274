#pragma once

// Single-shooting solver for the one-dimensional Robin problem
//
//     -u'' = f(u)  on (-R, R),     -u'(-R) + beta u(-R) = 0,   u'(R) + beta u(R) = 0,
//
// plus the evenness / positivity / monotonicity checks that hold when f >= 0.
// Nonlinear problems can have several solutions; solve() returns the one in the
// Newton basin of the supplied guess for u(-R).

#include <functional>
#include <string>
#include <vector>

#include "robinsym/errors.hpp"

namespace robinsym::bvp1d {

using Nonlinearity = std::function<double(double)>;

struct Problem {
  double R = 1.0;
  double beta = 1.0;
  Nonlinearity f;
  /// Caller asserts f >= 0 on R. Only verify_symmetry_theorem() reads it.
  bool claims_nonnegative = false;
};

struct SolveOptions {
  int steps = 2000;  ///< RK4 steps across [-R, R]; steps + 1 output nodes
  int max_newton_iterations = 50;
  double blowup_threshold = 1e12;
};

struct Solution {
  std::vector<double> nodes;
  std::vector<double> u;
  std::vector<double> du;
  double shooting_param = 0.0;  ///< converged u(-R)
  int newton_iters = 0;
  double bc_left = 0.0;   ///< -u'(-R) + beta u(-R)
  double bc_right = 0.0;  ///< u'(R) + beta u(R)
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, double last_residual)
      : Error(ErrorCode::kNoConvergence, message), last_residual_(last_residual) {}
  [[nodiscard]] double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Shoots from s = u(-R) with u'(-R) = beta s and Newton-iterates on
/// g(s) = u'(R) + beta u(R) (forward-difference slope, step max(1e-7, 1e-7|s|))
/// until |g| <= tol. A Newton step whose trajectory blows up is halved.
///
/// Throws NoConvergenceError after max_newton_iterations, Error(kDivergence)
/// when the converged-to trajectory exceeds blowup_threshold, and
/// Error(kInvalidArgument) for R <= 0, beta <= 0, tol <= 0 or a missing f.
Solution solve(const Problem& problem, double init_guess, double tol,
               const SolveOptions& options = {});

/// Cubic Hermite interpolant of (u, u') at x in [-R, R].
double interpolate(const Solution& solution, double x);

struct SymmetryReport {
  double symmetry_defect = 0.0;  ///< max |u(x) - u(-x)| over nodes
  double endpoint_defect = 0.0;  ///< |u(R) - u(-R)|
  double min_value = 0.0;
  double max_value = 0.0;
  double argmax = 0.0;
  bool monotone_decreasing_right = false;  ///< u' < 0 at every node in (0, R]
  bool positive = false;                   ///< min u > zero_tol
};

SymmetryReport diagnose(const Solution& solution, double zero_tol = 1e-10);

struct TheoremCheck {
  bool pass = false;
  bool even = false;
  bool positive = false;
  bool monotone = false;
  SymmetryReport report;
  Solution solution;
  std::vector<std::string> failures;
};

/// Solves a problem whose f is claimed nonnegative and checks the three
/// conclusions of the 1D symmetry result: evenness (defect <= evenness_tol),
/// positivity, and u' < 0 on (0, R].
///
/// The claim is spot-checked on the computed range [min u, max u]; a negative
/// sample of f, or f vanishing on the whole range, raises
/// Error(kHypothesisViolation).
TheoremCheck verify_symmetry_theorem(const Problem& problem, double init_guess, double tol,
                                     double evenness_tol = 1e-6,
                                     const SolveOptions& options = {});

}  // namespace robinsym::bvp1d
