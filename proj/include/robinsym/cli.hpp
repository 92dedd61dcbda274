#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace robinsym::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInvalid = 2;

/// Everything a subcommand can be configured with. Negative `samples` and an
/// empty `format` mean "use the subcommand's default".
struct RunConfig {
  std::string command;
  int n = 2;
  double R = 1.0;
  double a = 0.5;
  std::string x0;  ///< comma-separated; overrides `a` when set
  double beta = 0.25;

  double h = 1e-3;
  int order = 2;
  bool richardson = false;
  double tolerance_factor = 100.0;

  int samples = -1;
  unsigned long long seed = 7;
  std::string out;
  std::string format;

  // verify/sweep/region grids, row-major in a then beta
  double a_min = 0.1, a_max = 0.9;
  int a_count = 9;
  double beta_min = 0.05, beta_max = 1.0;
  int beta_count = 20;

  // profile
  std::string path = "circle";
  double radius = -1.0;  ///< circle radius; defaults to R

  // solve1d
  std::string f = "const:1";
  double seed_value = 1.0;
  double tol = 1e-10;
  int steps = 2000;
};

/// Flat key=value document; '#' starts a comment, blank lines are skipped.
/// Throws Error(kInvalidArgument) on a line without '='.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

/// Entry point behind the executable. `args[0]` is the program name. Returns
/// 0 when every check passes, 1 when checks ran and failed, 2 on invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robinsym::cli
