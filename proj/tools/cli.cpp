#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geostable/acceptance.hpp"
#include "geostable/artifacts.hpp"
#include "geostable/config.hpp"
#include "geostable/errors.hpp"
#include "geostable/levy.hpp"
#include "geostable/propagator.hpp"
#include "geostable/sampling.hpp"
#include "geostable/transform.hpp"

namespace geostable {

namespace {

struct Flags {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::vector<int> criteria;
};

RunConfig build_config(const Flags& fl) {
  RunConfig cfg = fl.config.empty() ? RunConfig{} : load_config(fl.config);
  for (const auto& s : fl.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    set_config_value(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (fl.seed) set_config_value(cfg, "seed", std::to_string(*fl.seed));
  if (fl.threads) set_config_value(cfg, "threads", std::to_string(*fl.threads));
  if (fl.out_dir) set_config_value(cfg, "out_dir", *fl.out_dir);
  if (fl.format) set_config_value(cfg, "format", *fl.format);
  cfg.validate();
  return cfg;
}

RngStream run_stream(const RunConfig& cfg) { return RngStream{cfg.seed, 0}; }

ParamCurves constant_curves(const RunConfig& cfg) {
  ParamCurves pc = cfg.curves();
  if (cfg.process == ProcessKind::stable) pc.b = Curve::constant(1.0);
  return pc;
}

SamplePaths sample_paths(const RunConfig& cfg) {
  const auto grid = uniform_grid(cfg.t, cfg.n_steps);
  const auto rng = run_stream(cfg);
  switch (cfg.process) {
    case ProcessKind::stable: return multistable_sample(constant_curves(cfg), grid, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::gs_homog: return gs2_sample(cfg.curves(), grid, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::gamma_inhom: return gamma_inhom_sample(cfg.b, grid, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::gs1: return gs1_sample(cfg.curves(), grid, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::gs2: return gs2_sample(cfg.curves(), grid, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::multistable: return multistable_sample(cfg.curves(), grid, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::vg_inhom: return vg_inhom_sample(cfg.b, grid, cfg.n_paths, rng, cfg.vg_mode, cfg.threads);
  }
  throw ConfigError("unknown process");
}

std::vector<double> terminal_samples(const RunConfig& cfg) {
  const auto rng = run_stream(cfg);
  const auto& pc = cfg.curves();
  switch (cfg.process) {
    case ProcessKind::stable: return stable_sample(cfg.alpha(0.0), cfg.theta(0.0), cfg.t, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::gs_homog:
      return gs_homog_sample(cfg.alpha(0.0), cfg.theta(0.0), cfg.b(0.0), cfg.t, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::gamma_inhom: return gamma_inhom_terminal(cfg.b, cfg.t, cfg.n_steps, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::gs1: return gs1_terminal(pc, cfg.t, cfg.n_steps, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::gs2: return gs2_terminal(pc, cfg.t, cfg.n_steps, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::multistable: return multistable_terminal(pc, cfg.t, cfg.n_steps, cfg.n_paths, rng, cfg.threads);
    case ProcessKind::vg_inhom:
      return vg_inhom_terminal(cfg.b, cfg.t, cfg.n_steps, cfg.n_paths, rng, cfg.vg_mode, cfg.threads);
  }
  throw ConfigError("unknown process");
}

std::string extension(const RunConfig& cfg) { return cfg.format == OutputFormat::csv ? ".csv" : ".bin"; }

// Writes a table in the configured format plus its sidecar; returns the path.
std::string emit(const RunConfig& cfg, const std::string& command, const std::string& stem, const Table& table,
                 nlohmann::json extra = nlohmann::json::object()) {
  const std::string path = artifact_path(cfg, stem + extension(cfg));
  auto side = make_sidecar(cfg, command);
  side["columns"] = table.names;
  if (cfg.format == OutputFormat::csv) {
    for (const auto& n : table.text_names) side["columns"].push_back(n);
    write_csv(path, table);
  } else {
    std::vector<double> flat;
    const std::size_t rows = table.rows();
    flat.reserve(rows * table.columns.size());
    for (std::size_t i = 0; i < rows; ++i)
      for (const auto& c : table.columns) flat.push_back(c[i]);
    write_binary(path, flat);
    side["shape"] = {rows, table.columns.size()};
    side["layout"] = "row-major float64 little-endian";
  }
  for (auto& [k, v] : extra.items()) side[k] = v;
  write_sidecar(path, side);
  return path;
}

nlohmann::json grid_json(const SpectralGrid& g) { return {{"n", g.n}, {"extent", g.x_extent}, {"dx", g.dx()}}; }

// ---------------------------------------------------------------- commands

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto paths = sample_paths(cfg);
  const std::size_t nt = paths.n_times();
  const std::string path = artifact_path(cfg, "paths" + extension(cfg));
  auto side = make_sidecar(cfg, "simulate");
  side["grid"] = paths.grid;
  side["scheme"] = paths.scheme;
  side["stream_id"] = paths.stream_id;
  side["shape"] = {paths.n_paths, nt};
  if (cfg.format == OutputFormat::csv) {
    Table t;
    for (std::size_t k = 0; k < nt; ++k) {
      std::ostringstream name;
      name << "t=" << std::setprecision(10) << paths.grid[k];
      t.names.push_back(name.str());
      t.columns.push_back(paths.column(k));
    }
    write_csv(path, t);
  } else {
    write_binary(path, paths.values);
    side["layout"] = "row-major float64 little-endian, one row per path";
  }
  write_sidecar(path, side);

  out << "process " << to_string(cfg.process) << ", " << paths.n_paths << " paths, scheme " << paths.scheme << "\n";
  out << std::setw(12) << "t" << std::setw(16) << "mean" << std::setw(16) << "variance" << std::setw(16) << "min"
      << std::setw(16) << "max" << "\n";
  for (std::size_t k = 0; k < nt; ++k) {
    const auto col = paths.column(k);
    double mean = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : col) {
      mean += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    mean /= static_cast<double>(col.size());
    double var = 0.0;
    for (double v : col) var += (v - mean) * (v - mean);
    var /= std::max<double>(1.0, static_cast<double>(col.size()) - 1.0);
    out << std::setw(12) << paths.grid[k] << std::setw(16) << mean << std::setw(16) << var << std::setw(16) << lo
        << std::setw(16) << hi << "\n";
  }
  out << "wrote " << path << "\n";
  return 0;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  const auto sym = cfg.symbol();
  const SpectralGrid grid(cfg.grid_n, cfg.grid_extent);
  DensityOptions opt;
  opt.allow_window = cfg.allow_window;
  const auto cf = [&](double xi) { return std::exp(accumulated_exponent(sym, 0.0, cfg.t, xi)); };
  const auto res = cf_to_density(cf, grid, opt);
  Table t{{"x", "density"}, {res.x, res.density}, {}, {}};
  const auto path = emit(cfg, "density", "density", t,
                         {{"grid", grid_json(grid)},
                          {"mass", res.mass},
                          {"windowed", res.windowed},
                          {"window_difference", res.window_difference},
                          {"warnings", res.warnings}});
  out << "mass " << res.mass << ", min " << res.min_value << (res.windowed ? ", windowed" : "") << "\n";
  for (const auto& w : res.warnings) out << "warning: " << w << "\n";
  out << "wrote " << path << "\n";
  return 0;
}

std::vector<double> levy_points(const RunConfig& cfg, bool full_line) {
  if (!cfg.x_values.empty()) return cfg.x_values;
  std::vector<double> xs;
  for (int i = 0; i < cfg.x_count; ++i) {
    const double u = cfg.x_count == 1 ? 0.0 : static_cast<double>(i) / (cfg.x_count - 1);
    xs.push_back(cfg.x_min * std::pow(cfg.x_max / cfg.x_min, u));
  }
  if (full_line) {
    std::vector<double> both;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) both.push_back(-*it);
    both.insert(both.end(), xs.begin(), xs.end());
    return both;
  }
  return xs;
}

int cmd_levy(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.x_min > 0.0 && cfg.x_max > cfg.x_min)) throw ConfigError("levy needs 0 < x_min < x_max");
  LevyDensity nu;
  switch (cfg.process) {
    case ProcessKind::gamma_inhom: nu = make_gamma_inhom_levy(cfg.b); break;
    case ProcessKind::gs1: nu = make_gs1_levy(cfg.curves()); break;
    case ProcessKind::gs_homog:
    case ProcessKind::gs2: nu = make_gs2_levy(cfg.alpha(0.0), cfg.theta(0.0), cfg.b); break;
    default:
      throw ConfigError(std::string("levy is available for gamma_inhom, gs_homog, gs1 and gs2, not ") +
                        to_string(cfg.process));
  }
  const auto xs = levy_points(cfg, nu.support == LevySupport::full_line);
  Table t{{"x", "t", "value", "terms", "error_estimate", "singular"}, std::vector<std::vector<double>>(6), {"method"},
          std::vector<std::vector<std::string>>(1)};
  for (double x : xs) {
    LevyValue v;
    try {
      v = nu.eval(x, cfg.levy_time);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    t.columns[0].push_back(x);
    t.columns[1].push_back(cfg.levy_time);
    t.columns[2].push_back(v.value);
    t.columns[3].push_back(v.terms);
    t.columns[4].push_back(v.error_estimate);
    t.columns[5].push_back(v.singular_flag ? 1.0 : 0.0);
    t.text_columns[0].push_back(v.method);
  }
  const auto path = emit(cfg, "levy", "levy", t);
  out << xs.size() << " points, wrote " << path << "\n";
  return 0;
}

int cmd_tails(const RunConfig& cfg, std::ostream& out) {
  auto x = terminal_samples(cfg);
  const auto rep = tail_slope_fit(x, cfg.q_lo, cfg.q_hi, cfg.tail_levels);
  std::vector<double> asym(rep.levels.size(), std::numeric_limits<double>::quiet_NaN());
  std::string asym_kind = "none";
  const double a = cfg.alpha(0.0);
  if (cfg.process == ProcessKind::gs1) {
    asym_kind = "gs1";
    for (std::size_t i = 0; i < asym.size(); ++i) asym[i] = tail_asymptote_gs1(cfg.curves(), cfg.t, rep.levels[i]);
  } else if ((cfg.process == ProcessKind::gs2 || cfg.process == ProcessKind::gs_homog) && a < 1.0) {
    asym_kind = "gs2";
    const double c = gs2_tail_coefficient(a, cfg.theta(0.0)) * gamma_inhom_moments(cfg.b, cfg.t).mean;
    for (std::size_t i = 0; i < asym.size(); ++i) asym[i] = c * std::pow(rep.levels[i], -a);
  }
  Table t{{"x", "survival", "asymptote"}, {rep.levels, rep.survival, asym}, {}, {}};
  const auto path = emit(cfg, "tails", "tails", t,
                         {{"slope", rep.slope},
                          {"slope_stderr", rep.slope_stderr},
                          {"exceedances", rep.exceedances},
                          {"asymptote", asym_kind}});
  out << "tail slope " << rep.slope << " +- " << rep.slope_stderr << " (" << rep.exceedances << " exceedances)\n";
  out << "wrote " << path << "\n";
  return 0;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  const auto x = terminal_samples(cfg);
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  Table t{{"mean", "variance", "skewness", "kurtosis", "mean_stderr"},
          {{mean}, {m2}, {m3 / std::pow(m2, 1.5)}, {m4 / (m2 * m2)}, {std::sqrt(m2 / n)}},
          {},
          {}};
  nlohmann::json extra = nlohmann::json::object();
  if (cfg.process == ProcessKind::gamma_inhom || cfg.process == ProcessKind::vg_inhom) {
    const auto m = gamma_inhom_moments(cfg.b, cfg.t);
    extra["exact"] = cfg.process == ProcessKind::gamma_inhom
                         ? nlohmann::json{{"mean", m.mean}, {"variance", m.variance}}
                         : nlohmann::json{{"mean", 0.0}, {"variance", 2.0 * m.mean}};
    out << "exact mean " << extra["exact"]["mean"].get<double>() << ", variance "
        << extra["exact"]["variance"].get<double>() << "\n";
  }
  const auto path = emit(cfg, "moments", "moments", t, extra);
  out << "sample mean " << mean << " +- " << std::sqrt(m2 / n) << ", variance " << m2 << "\n";
  out << "wrote " << path << "\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const SpectralGrid grid(cfg.grid_n, cfg.grid_extent);
  GridFunction f;
  if (cfg.initial == "gaussian") {
    f = gaussian_preset(grid, cfg.initial_centre, cfg.initial_width);
  } else if (cfg.initial == "bump") {
    f = bump_preset(grid, cfg.initial_centre, cfg.initial_width);
  } else {
    const auto xy = read_xy_csv(cfg.initial);
    f = GridFunction::sample(grid, [&](double x) {
      if (x < xy.front().first || x > xy.back().first) return 0.0;
      auto it = std::lower_bound(xy.begin(), xy.end(), x,
                                 [](const std::pair<double, double>& p, double v) { return p.first < v; });
      if (it == xy.begin()) return it->second;
      const auto& [x1, y1] = *it;
      const auto& [x0, y0] = *(it - 1);
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    });
  }
  std::vector<GridFunction> snaps;
  try {
    snaps = solve(f, cfg.symbol(), cfg.horizons, cfg.t_start, cfg.adjoint);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  Table t;
  t.names.push_back("x");
  t.columns.push_back(grid.xs());
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    std::ostringstream name;
    name << "t=" << std::setprecision(10) << cfg.horizons[i];
    t.names.push_back(name.str());
    t.columns.push_back(snaps[i].real());
  }
  const auto path = emit(cfg, "solve", "solve", t,
                         {{"grid", grid_json(grid)}, {"horizons", cfg.horizons}, {"adjoint", cfg.adjoint}});
  for (std::size_t i = 0; i < snaps.size(); ++i)
    out << "t=" << cfg.horizons[i] << " mass " << snaps[i].integral() << "\n";
  out << "wrote " << path << "\n";
  return 0;
}

int cmd_validate(const RunConfig& cfg, const std::vector<int>& ids, std::ostream& out) {
  AcceptanceOptions opt;
  opt.seed = cfg.seed;
  opt.threads = cfg.threads;
  std::vector<int> run = ids;
  if (run.empty())
    for (int i = 1; i <= kCriterionCount; ++i) run.push_back(i);
  Table t{{"criterion", "measured", "expected", "expected_hi", "pass"}, std::vector<std::vector<double>>(5),
          {"check", "relation"}, std::vector<std::vector<std::string>>(2)};
  bool all = true;
  for (int id : run) {
    if (id < 1 || id > kCriterionCount) throw ConfigError("criterion must lie in 1..11");
    const auto r = run_criterion(id, opt);
    all = all && r.pass();
    out << summary_line(r) << "\n" << detail_table(r) << std::flush;
    for (const auto& c : r.checks) {
      t.columns[0].push_back(id);
      t.columns[1].push_back(c.measured);
      t.columns[2].push_back(c.expected);
      t.columns[3].push_back(c.expected_hi);
      t.columns[4].push_back(c.pass ? 1.0 : 0.0);
      t.text_columns[0].push_back(c.name);
      t.text_columns[1].push_back(c.relation);
    }
  }
  RunConfig csv_cfg = cfg;
  csv_cfg.format = OutputFormat::csv;
  const auto path = emit(csv_cfg, "validate", "validate", t);
  out << (all ? "all criteria pass" : "some criteria FAIL") << ", wrote " << path << "\n";
  return all ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"geostable: time-inhomogeneous geometric stable processes"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags fl;
  app.add_option("--config", fl.config, "run configuration (key = value text, or a JSON sidecar)");
  app.add_option("--set", fl.sets, "override one config key, key=value (repeatable)");
  app.add_option("--seed", fl.seed, "random seed");
  app.add_option("--threads", fl.threads, "worker threads");
  app.add_option("--out-dir", fl.out_dir, "artifact directory");
  app.add_option("--format", fl.format, "artifact format")->check(CLI::IsMember({"csv", "binary"}));

  auto* sim = app.add_subcommand("simulate", "sample paths and print per-horizon statistics");
  auto* den = app.add_subcommand("density", "density of X(t) by FFT inversion");
  auto* lev = app.add_subcommand("levy", "Levy density on an x grid");
  auto* tai = app.add_subcommand("tails", "empirical tail and log-log slope");
  auto* mom = app.add_subcommand("moments", "sample moments of X(t)");
  auto* sol = app.add_subcommand("solve", "propagate an initial condition to the horizons");
  auto* val = app.add_subcommand("validate", "run the acceptance criteria");
  val->add_option("--criterion", fl.criteria, "criteria to run (default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  RunConfig cfg;
  try {
    cfg = build_config(fl);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sim) return cmd_simulate(cfg, out);
    if (*den) return cmd_density(cfg, out);
    if (*lev) return cmd_levy(cfg, out);
    if (*tai) return cmd_tails(cfg, out);
    if (*mom) return cmd_moments(cfg, out);
    if (*sol) return cmd_solve(cfg, out);
    if (*val) return cmd_validate(cfg, fl.criteria, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace geostable
