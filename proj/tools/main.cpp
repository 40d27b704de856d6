// Command-line front end: spectrum scans, state reconstruction, complex-plane
// convergence maps, weight moments, and a self-check suite.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "oppq/reconstructor.hpp"

using namespace oppq;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitPrecision = 65;
constexpr int kExitNonConvergence = 66;

// Numbers destined for CSV carry 30 significant digits.
std::string csv_num(const BigReal& v) { return v.str(30); }

std::string fixed9(const BigReal& v) { return v.str(9, std::ios_base::fixed); }

struct OutStream {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw ConfigError("cannot open output file '" + path + "'");
      os = &file;
    }
  }
  std::ostream& get() { return *os; }
};

struct CommonOpts {
  std::string problem = "harmonic";
  std::string weight;  // empty: matched weight of the problem
  std::string method = "oppq";
  std::string window;  // "lo:hi"; empty: family default
  std::string step;    // empty: family default
  std::string tol = "1e-12";
  unsigned digits = 0;  // 0: max(50, 3N)
  std::string out;

  void add_to(CLI::App* cmd, bool with_method = true) {
    cmd->add_option("--problem", problem,
                    "harmonic | sextic:a=<v>,b=<v> | rational");
    cmd->add_option("--weight", weight,
                    "gaussian | freud4:b=<v> | ground-state (default: matched)");
    if (with_method)
      cmd->add_option("--method", method, "oppq | global_local | hill");
    cmd->add_option("--window", window, "energy scan window lo:hi");
    cmd->add_option("--step", step, "energy scan step");
    cmd->add_option("--tol", tol, "root bisection tolerance");
    cmd->add_option("--digits", digits, "working decimal digits (0 = automatic)");
    cmd->add_option("--out", out, "output file (default: stdout)");
  }

  ProblemSpec problem_spec() const { return ProblemSpec::parse(problem); }
  WeightSpec weight_spec(const ProblemSpec& p) const {
    return weight.empty() ? matched_weight(p) : WeightSpec::parse(weight);
  }
  PrecisionContext context(int n) const {
    return PrecisionContext(digits != 0 ? digits : default_digits_for_order(n));
  }
  void resolve_window(const ProblemSpec& p, BigReal& lo, BigReal& hi,
                      BigReal& st) const {
    p.default_window(lo, hi);
    st = p.default_step();
    if (!window.empty()) {
      auto colon = window.find(':');
      if (colon == std::string::npos)
        throw ConfigError("--window expects lo:hi");
      lo = BigReal(window.substr(0, colon));
      hi = BigReal(window.substr(colon + 1));
    }
    if (!step.empty()) st = BigReal(step);
  }
};

std::string status_name(TrackStatus s) {
  switch (s) {
    case TrackStatus::Converged:
      return "converged";
    case TrackStatus::Drifting:
      return "drifting";
    case TrackStatus::Lost:
      return "lost";
  }
  return {};
}

std::string status_name(PointStatus s) {
  switch (s) {
    case PointStatus::Converged:
      return "converged";
    case PointStatus::Diverging:
      return "diverging";
    case PointStatus::Singular:
      return "singular";
  }
  return {};
}

// --- solve ---------------------------------------------------------------

int run_solve(const CommonOpts& opts, std::vector<int> orders) {
  std::sort(orders.begin(), orders.end());
  ProblemSpec problem = opts.problem_spec();
  WeightSpec weight = opts.weight_spec(problem);
  Method method = parse_method(opts.method);

  std::vector<std::vector<EnergyRoot>> runs;
  for (int n : orders) {
    PrecisionContext ctx = opts.context(n);
    BigReal lo, hi, step;
    ctx.activate();
    opts.resolve_window(problem, lo, hi, step);
    Solver solver(problem, weight, ctx);
    runs.push_back(solver.scan(method, n, lo, hi, step, BigReal(opts.tol)));
  }

  // Status per root: track across orders when there is more than one run.
  std::vector<std::vector<std::string>> statuses(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i)
    statuses[i].assign(runs[i].size(), "untracked");
  if (runs.size() >= 2) {
    ConvergenceTrack tracks =
        track_convergence(runs, BigReal(1) / 20, BigReal(1) / 1000000);
    for (const auto& track : tracks.tracks)
      for (std::size_t k = 0; k < track.entries.size(); ++k) {
        int run = track.run_indices[k];
        for (std::size_t r = 0; r < runs[run].size(); ++r)
          if (runs[run][r].level_index == track.entries[k].level_index)
            statuses[run][r] = status_name(track.status);
      }
  }

  OutStream out(opts.out);
  if (opts.out.empty()) {
    // Aligned table: one row per truncation order, lowest four levels.
    out.get() << "          N";
    for (int c = 0; c < 4; ++c) out.get() << "             E_" << c;
    out.get() << "\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
      std::ostringstream row;
      row.width(11);
      row << orders[i];
      for (std::size_t c = 0; c < 4; ++c) {
        row.width(16);
        row << (c < runs[i].size() ? fixed9(runs[i][c].energy) : std::string("-"));
      }
      out.get() << row.str() << "\n";
    }
    return 0;
  }

  out.get() << "method,problem_id,weight_id,N,level_index,energy,bracket_width,status\n";
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t r = 0; r < runs[i].size(); ++r) {
      const EnergyRoot& root = runs[i][r];
      out.get() << method_id(method) << ',' << problem.id() << ',' << weight.id()
                << ',' << orders[i] << ',' << root.level_index << ','
                << csv_num(root.energy) << ',' << csv_num(root.bracket_width) << ','
                << statuses[i][r] << "\n";
    }
  return 0;
}

// --- reconstruct / map ---------------------------------------------------

ReconstructedState locate_state(const CommonOpts& opts, int n,
                                const std::string& energy, int level,
                                const PrecisionContext& ctx) {
  ProblemSpec problem = opts.problem_spec();
  WeightSpec weight = opts.weight_spec(problem);
  Method method = parse_method(opts.method);

  auto basis = std::make_shared<const OrthoBasis>(
      build_basis(weight_moments(weight, 2 * n, ctx), n, ctx));
  BigReal root_energy;
  if (!energy.empty()) {
    root_energy = BigReal(energy);
  } else {
    BigReal lo, hi, step;
    opts.resolve_window(problem, lo, hi, step);
    auto roots = scan_spectrum(method, problem, weight, basis.get(), n, lo, hi,
                               step, BigReal(opts.tol), ctx);
    if (level < 0 || level >= static_cast<int>(roots.size()))
      throw ConfigError("level " + std::to_string(level) + " not found: scan produced " +
                        std::to_string(roots.size()) + " roots");
    root_energy = roots[level].energy;
  }
  return solve_state(method, problem, weight, basis, root_energy, n, ctx);
}

bool is_rational_ground(const ReconstructedState& state) {
  return state.problem.family == Family::Rational &&
         abs(state.energy + 3) < BigReal(1) / 10;
}

int run_reconstruct(const CommonOpts& opts, int n, const std::string& energy,
                    int level, const std::string& kind, int order,
                    const std::string& xmax, int points) {
  PrecisionContext ctx = opts.context(n);
  ctx.activate();
  ReconstructedState state = locate_state(opts, n, energy, level, ctx);
  const bool exact_known = is_rational_ground(state);
  OutStream out(opts.out);

  if (kind == "taylor") {
    TaylorCoefficients tc = reconstruction_taylor(state, order);
    out.get() << "n,d_n,exact\n";
    for (int k = 0; k <= order; ++k) {
      out.get() << k << ',' << csv_num(tc.d[k]) << ',';
      if (exact_known)
        out.get() << csv_num(k % 2 == 0 ? pow(-BigReal(2) / 3, k / 2) : BigReal(0));
      out.get() << "\n";
    }
    return 0;
  }
  if (kind != "wavefunction")
    throw ConfigError("--kind expects wavefunction or taylor");

  if (points < 2) throw ConfigError("--points must be at least 2");
  std::vector<BigReal> xs;
  BigReal xm(xmax);
  for (int i = 0; i < points; ++i) xs.push_back(xm * i / (points - 1));
  std::vector<BigReal> psi = evaluate_wavefunction(state, xs);

  std::vector<BigReal> exact;
  BigReal kappa(1);
  if (exact_known) {
    for (const auto& x : xs) exact.push_back(rational_ground_state(x));
    kappa = align_scale(psi, exact);
  }
  out.get() << "x,psi,exact,abs_error\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.get() << csv_num(xs[i]) << ',' << csv_num(kappa * psi[i]) << ',';
    if (exact_known)
      out.get() << csv_num(exact[i]) << ',' << csv_num(abs(kappa * psi[i] - exact[i]));
    else
      out.get() << ',';
    out.get() << "\n";
  }
  return 0;
}

int run_map(const CommonOpts& opts, int n, const std::string& energy, int level,
            const std::string& re_max, const std::string& im_max,
            const std::string& grid_step, std::vector<int> orders) {
  PrecisionContext ctx = opts.context(n);
  ctx.activate();
  ReconstructedState state = locate_state(opts, n, energy, level, ctx);

  if (orders.empty())
    for (int m = 40; m <= n; m += 20) orders.push_back(m);
  std::sort(orders.begin(), orders.end());

  std::vector<BigComplex> grid;
  BigReal rmax(re_max), imax(im_max), gstep(grid_step);
  for (BigReal im(0); im <= imax; im += gstep)
    for (BigReal re(0); re <= rmax; re += gstep) grid.emplace_back(re, im);

  ExactReference ref;
  const ExactReference* refp = nullptr;
  if (state.problem.family == Family::Rational && is_rational_ground(state)) {
    ref = rational_exact_reference();
    refp = &ref;
  }
  ConvergenceMap map = convergence_map(state, grid, orders, refp);

  OutStream out(opts.out);
  out.get() << "re,im,order,status,abs_error\n";
  for (std::size_t g = 0; g < grid.size(); ++g)
    for (std::size_t k = 0; k < orders.size(); ++k) {
      out.get() << csv_num(grid[g].re) << ',' << csv_num(grid[g].im) << ','
                << orders[k] << ',' << status_name(map.status[g][k]) << ',';
      if (map.abs_error[g][k] >= 0) out.get() << csv_num(map.abs_error[g][k]);
      out.get() << "\n";
    }
  return 0;
}

// --- moments -------------------------------------------------------------

int run_moments(const std::string& weight_id, int p_max, unsigned digits,
                const std::string& out_path) {
  PrecisionContext ctx(digits != 0 ? digits : 50);
  ctx.activate();
  WeightMoments wm = weight_moments(WeightSpec::parse(weight_id), p_max, ctx);
  OutStream out(out_path);
  out.get() << "p,s_p\n";
  for (int p = 0; p <= p_max; ++p)
    out.get() << p << ',' << csv_num(wm.s[p]) << "\n";
  return 0;
}

// --- validate ------------------------------------------------------------

int run_validate(unsigned digits, bool rational_taylor_alt) {
  PrecisionContext ctx(digits != 0 ? digits : 60);
  ctx.activate();
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const BigReal& detail) {
    std::cout << (ok ? "ok:   " : "FAIL: ") << name
              << "  (worst " << detail.str(3) << ")\n";
    if (!ok) ++failures;
  };

  {
    // The rational series recursion must reproduce the geometric exact
    // ground-state coefficients (-2/3)^k.
    auto rational = ProblemSpec::parse("rational");
    auto variant = rational_taylor_alt ? RationalTaylorVariant::Alt
                                       : RationalTaylorVariant::Corrected;
    TaylorTable t = taylor_table(rational, WeightSpec::parse("gaussian"),
                                 BigReal(-3), 20, ctx, variant);
    BigReal worst(0);
    for (int k = 0; k <= 10; ++k) {
      BigReal err = abs(t.t[2 * k][0] - pow(-BigReal(2) / 3, k));
      if (err > worst) worst = err;
    }
    report("rational series matches exact ground-state coefficients", worst < pow(BigReal(10), -40), worst);
  }

  {
    const int n = 16;
    OrthoBasis basis = build_basis(
        weight_moments(WeightSpec::parse("gaussian"), 2 * n, ctx), n, ctx);
    BigReal worst(0);
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= j; ++k) {
        BigReal err = abs(inner_product(basis, j, k) - (j == k ? 1 : 0));
        if (err > worst) worst = err;
      }
    report("basis orthonormality", worst < pow(BigReal(10), -40), worst);
  }

  {
    auto harmonic = ProblemSpec::parse("harmonic");
    Solver solver(harmonic, matched_weight(harmonic), ctx);
    auto roots = solver.scan(Method::Oppq, 20, BigReal(0), BigReal(8),
                             BigReal(1) / 4, pow(BigReal(10), -12));
    BigReal worst(1);
    if (roots.size() == 4) {
      worst = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        BigReal err = abs(roots[k].energy - BigReal(2 * k + 1));
        if (err > worst) worst = err;
      }
    }
    report("harmonic spectrum 1,3,5,7", worst < pow(BigReal(10), -10), worst);
  }

  {
    auto rational = ProblemSpec::parse("rational");
    WeightSpec gauss = WeightSpec::parse("gaussian");
    const int n = 20;
    auto basis = std::make_shared<const OrthoBasis>(
        build_basis(weight_moments(gauss, 2 * n, ctx), n, ctx));
    auto roots = scan_spectrum(Method::Oppq, rational, gauss, basis.get(), n,
                               BigReal(-4), BigReal(-2), BigReal(1) / 20,
                               pow(BigReal(10), -12), ctx);
    BigReal worst(1);
    if (!roots.empty()) {
      ReconstructedState state = solve_state(Method::Oppq, rational, gauss,
                                             basis, roots[0].energy, n, ctx);
      worst = verify_moment_match(state);
    }
    report("reconstruction matches its own moments",
           worst < pow(BigReal(10), -BigReal(ctx.decimal_digits()) / 2), worst);
  }

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-based spectral solver for one-dimensional bound states"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key=value file with [sections]");

  CommonOpts solve_opts;
  std::vector<int> solve_orders{20};
  CLI::App* solve = app.add_subcommand("solve", "scan a truncation ladder for energy levels");
  solve->configurable();
  solve_opts.add_to(solve);
  solve->add_option("--N", solve_orders, "truncation orders (repeatable)");

  CommonOpts rec_opts;
  int rec_n = 20, rec_level = 0, rec_points = 61, rec_order = 8;
  std::string rec_energy, rec_kind = "wavefunction", rec_xmax = "3";
  CLI::App* rec = app.add_subcommand("reconstruct", "extract a state at a quantized energy");
  rec->configurable();
  rec_opts.add_to(rec);
  rec->add_option("--N", rec_n, "truncation order");
  rec->add_option("--energy", rec_energy, "approximate root (default: scan + --level)");
  rec->add_option("--level", rec_level, "level index when scanning");
  rec->add_option("--kind", rec_kind, "wavefunction | taylor");
  rec->add_option("--order", rec_order, "series order for --kind taylor");
  rec->add_option("--xmax", rec_xmax, "wavefunction grid extent");
  rec->add_option("--points", rec_points, "wavefunction grid size");

  CommonOpts map_opts;
  int map_n = 60, map_level = 0;
  std::string map_energy, map_re = "5", map_im = "3", map_gstep = "0.5";
  std::vector<int> map_orders;
  CLI::App* mapc = app.add_subcommand("map", "classify expansion convergence over the complex plane");
  mapc->configurable();
  map_opts.add_to(mapc);
  mapc->add_option("--N", map_n, "truncation order");
  mapc->add_option("--energy", map_energy, "approximate root (default: scan + --level)");
  mapc->add_option("--level", map_level, "level index when scanning");
  mapc->add_option("--re-max", map_re, "grid extent along the real axis");
  mapc->add_option("--im-max", map_im, "grid extent along the imaginary axis");
  mapc->add_option("--grid-step", map_gstep, "grid spacing");
  mapc->add_option("--orders", map_orders, "partial-sum orders (multiples of 20)");

  std::string mom_weight = "gaussian", mom_out;
  int mom_pmax = 20;
  unsigned mom_digits = 0;
  CLI::App* mom = app.add_subcommand("moments", "tabulate weight power moments");
  mom->configurable();
  mom->add_option("--weight", mom_weight, "gaussian | freud4:b=<v> | ground-state");
  mom->add_option("--pmax", mom_pmax, "highest moment order");
  mom->add_option("--digits", mom_digits, "working decimal digits");
  mom->add_option("--out", mom_out, "output file (default: stdout)");

  unsigned val_digits = 0;
  bool val_alt = false;
  CLI::App* val = app.add_subcommand("validate", "run built-in cross-checks");
  val->configurable();
  val->add_option("--digits", val_digits, "working decimal digits");
  val->add_flag("--rational-taylor-alt", val_alt,
                "use the rejected series coefficient variant (must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(solve_opts, solve_orders);
    if (rec->parsed())
      return run_reconstruct(rec_opts, rec_n, rec_energy, rec_level, rec_kind,
                             rec_order, rec_xmax, rec_points);
    if (mapc->parsed())
      return run_map(map_opts, map_n, map_energy, map_level, map_re, map_im,
                     map_gstep, map_orders);
    if (mom->parsed()) return run_moments(mom_weight, mom_pmax, mom_digits, mom_out);
    if (val->parsed()) return run_validate(val_digits, val_alt);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
