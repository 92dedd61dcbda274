#include "robinsym/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "robinsym/bvp1d.hpp"
#include "robinsym/counterexample.hpp"
#include "robinsym/errors.hpp"
#include "robinsym/oracle.hpp"
#include "robinsym/report_io.hpp"

namespace robinsym::cli {

namespace {

using io::Json;

constexpr const char* kCommands[] = {"verify", "sweep", "region", "profile", "solve1d"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const std::string t = trim(item);
      v.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "cannot parse x0 component '" + item + "'");
    }
  }
  return v;
}

int default_samples(const std::string& command) {
  if (command == "region") return 10000;
  if (command == "profile") return 360;
  if (command == "sweep") return 200;
  return 1000;
}

std::string default_format(const std::string& command) {
  return command == "region" || command == "profile" || command == "sweep" ? "csv" : "json";
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, message);
}

void finalize(RunConfig& c) {
  if (c.samples < 0) c.samples = default_samples(c.command);
  if (c.format.empty()) c.format = default_format(c.command);
  require(c.format == "csv" || c.format == "json", "format must be csv or json");
  require(c.samples >= 1, "samples must be >= 1");
  require(std::isfinite(c.R) && std::isfinite(c.a) && std::isfinite(c.beta) &&
              std::isfinite(c.h),
          "numeric parameters must be finite");
  require(c.a_count >= 1 && c.beta_count >= 1, "grid counts must be >= 1");
  require(std::isfinite(c.a_min) && std::isfinite(c.a_max) && c.a_min <= c.a_max,
          "a range must be finite and non-empty");
  require(std::isfinite(c.beta_min) && std::isfinite(c.beta_max) && c.beta_min <= c.beta_max,
          "beta range must be finite and non-empty");
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  return v;
}

BallGeometry make_geometry(const RunConfig& c) {
  if (!c.x0.empty()) return BallGeometry(c.n, c.R, parse_vector(c.x0));
  return BallGeometry::on_axis(c.n, c.R, c.a);
}

oracle::StencilConfig stencil(const RunConfig& c) {
  oracle::StencilConfig cfg{c.h, c.richardson, c.order};
  oracle::validate(cfg);
  return cfg;
}

void emit(const std::string& document, const RunConfig& c, std::ostream& out) {
  if (c.out.empty()) {
    out << document;
    return;
  }
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot open output file " + c.out);
  file << document;
  if (!file) throw Error(ErrorCode::kInvalidArgument, "failed writing " + c.out);
}

Json params_json(const CounterexampleModel& m) {
  return Json{{"n", m.dimension()},
              {"R", m.radius()},
              {"a", m.geometry().offset_norm()},
              {"x0", m.geometry().offset()},
              {"beta", m.beta()}};
}

Json coefficients_json(const CounterexampleModel& m) {
  return Json{{"c1", m.c1()},
              {"c2", m.c2()},
              {"c3", m.c3()},
              {"alpha_sq", m.alpha_sq()},
              {"p", m.exponent()}};
}

struct VerifyOutcome {
  oracle::ClosedFormReport closed;
  oracle::ResidualReport audit;
  ConstraintClass cls;
  double threshold;
  bool pass;
};

VerifyOutcome verify_model(const CounterexampleModel& model, const RunConfig& c) {
  VerifyOutcome v;
  v.closed = oracle::closed_form_audit(model, c.samples, c.seed);
  v.audit = oracle::residual_audit(model, c.samples, stencil(c), c.seed,
                                   oracle::AuditOptions{c.tolerance_factor, true});
  v.cls = check_superharmonic_constraint(model.geometry(), RobinParameter(model.beta()));
  v.threshold = superharmonic_threshold(model.geometry());
  v.pass = v.closed.pass && v.audit.pass;
  return v;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto model = CounterexampleModel::derive(make_geometry(c), RobinParameter(c.beta));
  const VerifyOutcome v = verify_model(model, c);
  if (c.format == "json") {
    Json doc;
    doc["command"] = "verify";
    doc["params"] = params_json(model);
    doc["coefficients"] = coefficients_json(model);
    doc["constraint_class"] = std::string(to_string(v.cls));
    doc["threshold"] = v.threshold;
    doc["closed_form"] = {{"n_interior", v.closed.n_interior},
                          {"n_boundary", v.closed.n_boundary},
                          {"max_pde_residual_rel", v.closed.max_pde_residual_rel},
                          {"max_robin_residual_rel", v.closed.max_robin_residual_rel},
                          {"pass", v.closed.pass}};
    doc["oracle"] = io::to_json(v.audit);
    doc["pass"] = v.pass;
    emit(io::dump(doc), c, out);
  } else {
    io::CsvTable t({"n", "R", "a", "beta", "h", "max_pde_closed_rel", "max_robin_closed_rel",
                    "max_pde_fd", "max_robin_fd", "observed_order", "constraint_class", "pass"});
    t.add_row({std::to_string(model.dimension()), io::csv_number(model.radius()),
               io::csv_number(model.geometry().offset_norm()), io::csv_number(model.beta()),
               io::csv_number(c.h), io::csv_number(v.closed.max_pde_residual_rel),
               io::csv_number(v.closed.max_robin_residual_rel),
               io::csv_number(v.audit.max_pde_residual_fd),
               io::csv_number(v.audit.max_robin_residual_fd),
               v.audit.observed_order ? io::csv_number(*v.audit.observed_order) : "",
               std::string(to_string(v.cls)), v.pass ? "1" : "0"});
    emit(t.str(), c, out);
  }
  return v.pass ? kExitPass : kExitFail;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const auto as = linspace(c.a_min, c.a_max, c.a_count);
  const auto betas = linspace(c.beta_min, c.beta_max, c.beta_count);
  // Validate the whole grid before doing any work.
  for (const double a : as) (void)BallGeometry::on_axis(c.n, c.R, a);
  for (const double b : betas) (void)RobinParameter(b);

  io::CsvTable t({"a", "beta", "max_pde_closed_rel", "max_robin_closed_rel", "max_pde_fd",
                  "max_robin_fd", "observed_order", "constraint_class", "pass"});
  Json rows = Json::array();
  bool all_pass = true;
  for (const double a : as) {
    for (const double b : betas) {
      const auto model =
          CounterexampleModel::derive(BallGeometry::on_axis(c.n, c.R, a), RobinParameter(b));
      const VerifyOutcome v = verify_model(model, c);
      all_pass = all_pass && v.pass;
      t.add_row({io::csv_number(a), io::csv_number(b),
                 io::csv_number(v.closed.max_pde_residual_rel),
                 io::csv_number(v.closed.max_robin_residual_rel),
                 io::csv_number(v.audit.max_pde_residual_fd),
                 io::csv_number(v.audit.max_robin_residual_fd),
                 v.audit.observed_order ? io::csv_number(*v.audit.observed_order) : "",
                 std::string(to_string(v.cls)), v.pass ? "1" : "0"});
      rows.push_back({{"a", a},
                      {"beta", b},
                      {"max_pde_closed_rel", v.closed.max_pde_residual_rel},
                      {"max_robin_closed_rel", v.closed.max_robin_residual_rel},
                      {"oracle", io::to_json(v.audit)},
                      {"constraint_class", std::string(to_string(v.cls))},
                      {"pass", v.pass}});
    }
  }
  if (c.format == "json") {
    emit(io::dump(Json{{"command", "sweep"}, {"n", c.n}, {"R", c.R}, {"rows", rows},
                       {"pass", all_pass}}),
         c, out);
  } else {
    emit(t.str(), c, out);
  }
  return all_pass ? kExitPass : kExitFail;
}

int cmd_region(const RunConfig& c, std::ostream& out) {
  const auto as = linspace(c.a_min, c.a_max, c.a_count);
  const auto betas = linspace(c.beta_min, c.beta_max, c.beta_count);
  for (const double a : as) (void)BallGeometry::on_axis(c.n, c.R, a);
  for (const double b : betas) (void)RobinParameter(b);

  io::CsvTable t({"a", "beta", "threshold", "guaranteed", "min_f_composed_phi"});
  Json rows = Json::array();
  bool sound = true;
  for (const double a : as) {
    for (const double b : betas) {
      const RegionCell cell = evaluate_region_cell(c.n, c.R, a, b, c.samples);
      const bool guaranteed = cell.cls == ConstraintClass::kGuaranteedNonnegative;
      if (guaranteed && (cell.min_f_composed_phi < -1e-12 || cell.max_laplacian > 1e-12)) {
        sound = false;
      }
      t.add_row({io::csv_number(a), io::csv_number(b), io::csv_number(cell.threshold),
                 guaranteed ? "1" : "0", io::csv_number(cell.min_f_composed_phi)});
      rows.push_back({{"a", a},
                      {"beta", b},
                      {"threshold", cell.threshold},
                      {"guaranteed", guaranteed},
                      {"min_f_composed_phi", cell.min_f_composed_phi}});
    }
  }
  if (c.format == "json") {
    emit(io::dump(Json{{"command", "region"}, {"n", c.n}, {"R", c.R}, {"rows", rows},
                       {"sound", sound}}),
         c, out);
  } else {
    emit(t.str(), c, out);
  }
  return sound ? kExitPass : kExitFail;
}

int cmd_profile(const RunConfig& c, std::ostream& out) {
  const BallGeometry geom = make_geometry(c);
  const auto model = CounterexampleModel::derive(geom, RobinParameter(c.beta));
  const double R = geom.radius();
  const auto n = static_cast<std::size_t>(geom.dimension());

  std::vector<Point> points;
  if (c.path == "circle") {
    const double rho = c.radius < 0.0 ? R : c.radius;
    require(rho <= R, "profile radius must not exceed R");
    if (n == 1) {
      points = {Point{rho}, Point{-rho}};
    } else {
      for (int k = 0; k < c.samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / c.samples;
        Point p(n, 0.0);
        // exact antipode of the starting point when the count is even
        p[0] = 2 * k == c.samples ? -rho : rho * std::cos(t);
        p[1] = 2 * k == c.samples ? 0.0 : rho * std::sin(t);
        points.push_back(std::move(p));
      }
    }
  } else if (c.path == "segment") {
    // x0 + t e_1 for t in [0, t_max], |x0 + t_max e_1| = R.
    const Point& x0 = geom.offset();
    const double a_sq = geom.offset_norm() * geom.offset_norm();
    const double t_max = -x0[0] + std::sqrt(x0[0] * x0[0] - a_sq + R * R);
    for (int k = 0; k < c.samples; ++k) {
      const double t = c.samples == 1 ? 0.0 : t_max * k / (c.samples - 1);
      Point p = x0;
      p[0] += t;
      points.push_back(std::move(p));
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "path must be circle or segment");
  }

  io::CsvTable t({"x1", "x2", "r", "phi", "f_phi", "laplacian"});
  Json rows = Json::array();
  for (const Point& p : points) {
    const double x1 = p[0];
    const double x2 = n > 1 ? p[1] : 0.0;
    const double r = std::sqrt(distance_sq(p, geom.offset()));
    const double phi = model.phi(p);
    const double fphi = model.f(phi);
    const double lap = model.laplacian_phi(p);
    t.add_row({io::csv_number(x1), io::csv_number(x2), io::csv_number(r), io::csv_number(phi),
               io::csv_number(fphi), io::csv_number(lap)});
    rows.push_back(
        {{"x1", x1}, {"x2", x2}, {"r", r}, {"phi", phi}, {"f_phi", fphi}, {"laplacian", lap}});
  }
  if (c.format == "json") {
    emit(io::dump(Json{{"command", "profile"}, {"params", params_json(model)}, {"path", c.path},
                       {"rows", rows}}),
         c, out);
  } else {
    emit(t.str(), c, out);
  }
  return kExitPass;
}

struct NamedNonlinearity {
  bvp1d::Nonlinearity f;
  bool claims_nonnegative;
};

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, "cannot parse " + what + " '" + text + "'");
}

// const:<c> | power:<k> (max(u,0)^k) | paper-n1 (the n = 1 counterexample's f)
NamedNonlinearity lookup_nonlinearity(const RunConfig& c) {
  const std::string& name = c.f;
  if (name.rfind("const:", 0) == 0) {
    const double v = parse_number(name.substr(6), "constant");
    return {[v](double) { return v; }, v >= 0.0};
  }
  if (name.rfind("power:", 0) == 0) {
    const double k = parse_number(name.substr(6), "power");
    require(k > 0.0, "power exponent must be > 0");
    return {[k](double u) { return std::pow(std::max(u, 0.0), k); }, true};
  }
  if (name == "paper-n1") {
    const auto model =
        CounterexampleModel::derive(BallGeometry::on_axis(1, c.R, c.a), RobinParameter(c.beta));
    // f is defined on t > 0; the shooting iterates are extended by f(t) = 0 below.
    return {[model](double u) { return u > 0.0 ? model.f(u) : 0.0; }, false};
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown nonlinearity '" + name + "' (expected const:<c>, power:<k> or paper-n1)");
}

int cmd_solve1d(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require(c.R > 0.0, "R must be > 0");
  require(c.beta > 0.0, "beta must be > 0");
  const NamedNonlinearity nl = lookup_nonlinearity(c);
  const bvp1d::Problem problem{c.R, c.beta, nl.f, nl.claims_nonnegative};
  bvp1d::SolveOptions options;
  options.steps = c.steps;

  bvp1d::Solution sol;
  try {
    sol = bvp1d::solve(problem, c.seed_value, c.tol, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoConvergence && e.code() != ErrorCode::kDivergence) throw;
    Json doc{{"command", "solve1d"},
             {"problem", {{"R", c.R}, {"beta", c.beta}, {"f", c.f}}},
             {"converged", false},
             {"error", e.what()}};
    if (const auto* nc = dynamic_cast<const bvp1d::NoConvergenceError*>(&e)) {
      doc["last_residual"] = nc->last_residual();
    }
    err << "solve1d: " << e.what() << "\n";
    if (c.format == "json") emit(io::dump(doc), c, out);
    return kExitFail;
  }
  const bvp1d::SymmetryReport report = bvp1d::diagnose(sol);

  if (c.format == "csv") {
    io::CsvTable t({"x", "u", "du"});
    for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
      t.add_row({io::csv_number(sol.nodes[i]), io::csv_number(sol.u[i]),
                 io::csv_number(sol.du[i])});
    }
    emit(t.str(), c, out);
    return kExitPass;
  }

  Json doc;
  doc["command"] = "solve1d";
  doc["problem"] = {{"R", c.R},
                    {"beta", c.beta},
                    {"f", c.f},
                    {"claims_nonnegative", nl.claims_nonnegative},
                    {"seed_value", c.seed_value},
                    {"tol", c.tol},
                    {"steps", c.steps}};
  doc["converged"] = true;
  doc["diagnostics"] = io::to_json(report);
  if (nl.claims_nonnegative) {
    try {
      const auto check = bvp1d::verify_symmetry_theorem(problem, c.seed_value, c.tol, 1e-6, options);
      doc["symmetry_check"] = {{"applicable", true},
                               {"pass", check.pass},
                               {"even", check.even},
                               {"positive", check.positive},
                               {"monotone", check.monotone},
                               {"failures", check.failures}};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kHypothesisViolation) throw;
      doc["symmetry_check"] = {{"applicable", false}, {"reason", e.what()}};
    }
  } else {
    doc["symmetry_check"] = {{"applicable", false},
                             {"reason", "f is not claimed nonnegative"}};
  }
  doc["solution"] = io::to_json(sol);
  emit(io::dump(doc), c, out);
  return kExitPass;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->set_help_flag("--help", "Print this help message and exit");
  sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--n", c.n, "Space dimension");
  sub->add_option("--R", c.R, "Ball radius");
  sub->add_option("--a", c.a, "Offset |x0| along the first axis");
  sub->add_option("--x0", c.x0, "Offset centre as comma-separated coordinates");
  sub->add_option("--beta", c.beta, "Robin parameter");
  sub->add_option("--samples", c.samples, "Sample count");
  sub->add_option("--seed", c.seed, "RNG seed for interior samples");
  sub->add_option("--out", c.out, "Output file (stdout when omitted)");
  sub->add_option("--format", c.format, "csv or json");
  sub->add_option("--config", "Flat key=value config file; flags override it");
}

void add_grid(CLI::App* sub, RunConfig& c) {
  sub->add_option("--a-min", c.a_min);
  sub->add_option("--a-max", c.a_max);
  sub->add_option("--a-count", c.a_count);
  sub->add_option("--beta-min", c.beta_min);
  sub->add_option("--beta-max", c.beta_max);
  sub->add_option("--beta-count", c.beta_count);
}

void add_stencil(CLI::App* sub, RunConfig& c) {
  sub->add_option("--h", c.h, "Finite-difference step");
  sub->add_option("--order", c.order, "Stencil order (2 or 4)");
  sub->add_flag("--richardson", c.richardson, "Combine h and h/2 estimates");
  sub->add_option("--tolerance-factor", c.tolerance_factor,
                  "Audit passes when residuals <= factor * max|Lap phi| * h^2");
}

// Splices config-file entries in as "--key=value" right after the subcommand so
// that flags given on the command line (later, TakeLast) win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto entries = parse_config_text(buf.str());

  std::vector<std::string> expanded(args.begin(), args.end());
  auto is_command = [](const std::string& s) {
    return std::find(std::begin(kCommands), std::end(kCommands), s) != std::end(kCommands);
  };
  auto cmd_it = std::find_if(expanded.begin() + 1, expanded.end(), is_command);
  std::vector<std::string> injected;
  std::string command;
  for (const auto& [key, value] : entries) {
    if (key == "command") {
      command = value;
    } else {
      injected.push_back("--" + key + "=" + value);
    }
  }
  if (cmd_it == expanded.end()) {
    if (command.empty()) return expanded;
    cmd_it = expanded.insert(expanded.begin() + 1, command);
  }
  expanded.insert(cmd_it + 1, injected.begin(), injected.end());
  return expanded;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) + " is not key=value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Verification tool for the non-radial Robin counterexample"};
  app.require_subcommand(1);
  // "--h" is the stencil step, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  auto* verify = app.add_subcommand("verify", "Closed-form and finite-difference residual audit");
  auto* sweep = app.add_subcommand("sweep", "verify over an (a, beta) grid");
  auto* region = app.add_subcommand("region", "Nonnegativity classification over an (a, beta) grid");
  auto* profile = app.add_subcommand("profile", "Tabulate phi, f(phi), Lap phi along a path");
  auto* solve1d = app.add_subcommand("solve1d", "Shooting solve of the 1D Robin problem");
  for (auto* sub : {verify, sweep, region, profile, solve1d}) add_common(sub, c);
  add_stencil(verify, c);
  add_stencil(sweep, c);
  add_grid(sweep, c);
  add_grid(region, c);
  profile->add_option("--path", c.path, "circle or segment");
  profile->add_option("--radius", c.radius, "Circle radius (defaults to R)");
  solve1d->add_option("--f", c.f, "const:<c> | power:<k> | paper-n1");
  solve1d->add_option("--seed-value", c.seed_value, "Initial guess for u(-R)");
  solve1d->add_option("--tol", c.tol, "Shooting residual tolerance");
  solve1d->add_option("--steps", c.steps, "RK4 steps across [-R, R]");

  try {
    const std::vector<std::string> expanded = expand_config(args);
    std::vector<const char*> argv;
    argv.reserve(expanded.size());
    for (const auto& s : expanded) argv.push_back(s.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitPass : kExitInvalid;
    }
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
    finalize(c);

    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    if (c.command == "region") return cmd_region(c, out);
    if (c.command == "profile") return cmd_profile(c, out);
    return cmd_solve1d(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace robinsym::cli
