#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dplab/bounded_queue.hpp"
#include "dplab/errors.hpp"
#include "dplab/evolution.hpp"
#include "dplab/functionals.hpp"
#include "dplab/profile.hpp"
#include "dplab/spectrum.hpp"
#include "dplab/stability.hpp"
#include "quantities.hpp"

namespace dplab::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

class Output {
 public:
  Output(const RunConfig& config, std::string stem)
      : dir_(config.out), stem_(std::move(stem)), hash_(config_hash(config)) {}

  const std::string& hash() const { return hash_; }
  const std::string& stem() const { return stem_; }

  fs::path path(const std::string& suffix) const { return dir_ / (stem_ + suffix); }

  std::ofstream open(const std::string& suffix) const {
    std::ofstream out(path(suffix));
    if (!out) throw ValidationError("cannot write '" + path(suffix).string() + "'");
    out << std::setprecision(17);
    return out;
  }

  std::ofstream csv(const std::string& suffix, const std::string& header) const {
    auto out = open(suffix);
    out << "# config_hash: " << hash_ << '\n' << header << '\n';
    return out;
  }

  void json(const std::string& suffix, Json doc) const {
    doc["config_hash"] = hash_;
    open(suffix) << doc.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::string stem_;
  std::string hash_;
};

// NaN and infinities have no JSON literal.
Json number(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

SolitonProfile line_profile(const WaveParams& params, const RunConfig& config) {
  const auto grid = config.L > 0.0 ? SymmetricGrid(config.L, config.n)
                                   : SymmetricGrid::for_params(params, 1e-12, config.n);
  return compute_profile(params, grid, config.tol.profile);
}

PeriodicGrid circle(const WaveParams& params, const RunConfig& config) {
  const double period =
      config.period > 0.0 ? config.period : periodic_grid_for(params, 1.0).period();
  return PeriodicGrid(period, config.n_periodic);
}

IndexOptions index_options(const RunConfig& config) {
  IndexOptions options;
  options.tol_identity = config.tol.identity;
  options.tol_eig = config.tol.eig;
  options.tol_profile = config.tol.profile;
  options.delta_c = config.delta_c;
  options.richardson = config.richardson;
  options.matrix_check = config.matrix_check;
  return options;
}

Json index_json(const IndexReport& r) {
  Json doc;
  doc["c"] = r.c;
  doc["k"] = r.k;
  doc["n_minus"] = r.n_minus;
  doc["n_minus_matrix"] = r.n_minus_matrix ? Json(*r.n_minus_matrix) : Json(nullptr);
  doc["lambda_star"] = number(r.lambda_star);
  doc["lambda_star_matrix"] = r.lambda_star_matrix ? number(*r.lambda_star_matrix) : Json(nullptr);
  doc["quad_form"] = number(r.quad_form);
  doc["dSdc"] = number(r.dSdc);
  doc["defect"] = number(r.defect);
  doc["gkernel_residual"] = number(r.gkernel_residual);
  doc["k0_lower_bound"] = r.k0_lower_bound;
  doc["traveling_residual"] = number(r.traveling_residual);
  doc["verdict"] = std::string(to_string(r.verdict));
  doc["failing_clause"] = r.failing_clause;
  return doc;
}

ExitCode cmd_profile(const RunConfig& config, std::ostream& log) {
  const auto params = WaveParams::make(config.c, config.k);
  const auto profile = line_profile(params, config);
  const Output output(config, output_stem(config));

  auto csv = output.csv(".csv", "xi,phi,phi_xi");
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    csv << profile.grid.point(i) << ',' << profile.values[i] << ',' << profile.derivative[i] << '\n';
  }

  Json doc;
  doc["c"] = params.c();
  doc["k"] = params.k();
  doc["phi_max"] = profile.phi_max;
  doc["nu"] = profile.tail_rate;
  doc["L"] = profile.grid.half_width();
  doc["n"] = profile.grid.size();
  doc["traveling_residual"] = traveling_residual(profile);
  doc["first_integral_residual"] = profile.first_integral_residual;
  doc["evenness_defect"] = profile.evenness_defect;
  output.json(".json", doc);
  log << "phi_max = " << std::setprecision(17) << profile.phi_max << '\n';
  return ExitCode::Ok;
}

ExitCode cmd_functionals(const RunConfig& config, std::ostream& log) {
  const auto params = WaveParams::make(config.c, config.k);
  const auto profile = line_profile(params, config);
  const Output output(config, output_stem(config));
  const double c = params.c();
  const double k = params.k();

  const auto triple = conserved(profile.field(), k);
  const double S_closed = S_closed_form(c, k);
  const double S_quad = S_quadrature_reduced(profile);
  const double dSdc_closed = dSdc_closed_form(c, k);
  const double h = 1e-5 * c;
  const double dSdc_fd = (S_closed_form(c + h, k) - S_closed_form(c - h, k)) / (2.0 * h);
  const double residual = traveling_residual(profile);

  output.csv(".csv", "c,k,S_closed,S_quad,dSdc_closed,dSdc_fd,residual")
      << c << ',' << k << ',' << S_closed << ',' << S_quad << ',' << dSdc_closed << ',' << dSdc_fd
      << ',' << residual << '\n';

  Json doc;
  doc["c"] = c;
  doc["k"] = k;
  doc["M"] = triple.M;
  doc["H"] = triple.H;
  doc["S"] = triple.S;
  doc["S_closed"] = S_closed;
  doc["S_quad"] = S_quad;
  doc["dSdc_closed"] = dSdc_closed;
  doc["dSdc_fd"] = dSdc_fd;
  doc["Q"] = lagrangian_Q(profile.field(), params);
  doc["residual"] = residual;
  output.json(".json", doc);
  log << std::setprecision(17) << "S = " << triple.S << "  S_closed = " << S_closed
      << "  dS/dc = " << dSdc_closed << '\n';
  return ExitCode::Ok;
}

ExitCode cmd_spectrum(const RunConfig& config, std::ostream& log) {
  const auto params = WaveParams::make(config.c, config.k);
  const auto profile = line_profile(params, config);
  const Output output(config, output_stem(config));

  SpectrumOptions options;
  options.eig_tol = config.tol.eig;
  options.ode_tol = config.tol.ode;
  options.bisection_tol = config.tol.bisection;
  const auto report = compute_spectrum(profile, options);

  Json doc;
  doc["c"] = params.c();
  doc["k"] = params.k();
  doc["essential"] = {report.essential.lo, report.essential.hi};
  doc["eigenvalues"] = Json::array();
  for (const auto& e : report.eigenvalues) {
    doc["eigenvalues"].push_back({{"lambda", e.lambda},
                                  {"multiplicity", e.multiplicity},
                                  {"residual", number(e.residual)},
                                  {"parity", e.even ? "even" : "odd"}});
  }
  doc["lambda_star"] = report.lambda_star;
  doc["negative_count"] = report.negative_count;
  doc["theta_zero_at_origin"] = report.theta_zero_at_origin;
  doc["quadrant_invariant"] = report.quadrant_invariant;
  doc["monotone_in_lambda"] = report.monotone_in_lambda;

  Json resolution;
  resolution["L"] = report.half_width;
  resolution["n"] = report.grid_size;
  resolution["ode_tol"] = config.tol.ode;
  resolution["bisection_tol"] = config.tol.bisection;

  if (config.matrix_check) {
    const auto grid = config.period > 0.0 ? PeriodicGrid(config.period, config.n_periodic)
                                          : periodic_grid_for(params, 0.08);
    const auto matrix = discretize_and_diagonalize_Lc(periodize(params, grid));
    auto dots = output.csv("_matrix.csv", "index,lambda");
    for (std::size_t i = 0; i < matrix.eigenvalues.size(); ++i) {
      dots << i << ',' << matrix.eigenvalues[i] << '\n';
    }
    Json m;
    m["period"] = matrix.period;
    m["n"] = matrix.n;
    m["negative_count"] = matrix.negative_count;
    m["lambda_min"] = matrix.lambda_min;
    m["near_zero"] = matrix.near_zero;
    m["kernel_overlap"] = matrix.kernel_overlap;
    m["edge_estimate"] = matrix.edge_estimate;
    m["bound_states"] = matrix.bound_states;
    doc["matrix"] = m;
  }
  doc["resolution"] = resolution;
  output.json(".json", doc);

  // Angle traces at lambda = 0 and lambda = lambda*.
  const ReducedCoefficient coefficient(profile);
  auto trace = [&](double lambda, const std::string& suffix) {
    const auto t = prufer_shoot(lambda, coefficient, profile.grid, config.tol.ode);
    auto csv = output.csv(suffix, "xi,theta");
    for (std::size_t i = 0; i < t.xi.size(); ++i) csv << t.xi[i] << ',' << t.theta[i] << '\n';
  };
  trace(0.0, "_theta_zero.csv");
  trace(report.lambda_star, "_theta_star.csv");

  log << std::setprecision(12) << "lambda* = " << report.lambda_star
      << "  negative_count = " << report.negative_count << '\n';
  return ExitCode::Ok;
}

ExitCode cmd_index(const RunConfig& config, std::ostream& log) {
  const auto params = WaveParams::make(config.c, config.k);
  const auto profile = line_profile(params, config);
  const Output output(config, output_stem(config));
  const auto report = index_report(profile, index_options(config));
  output.json(".json", index_json(report));
  log << "verdict: " << to_string(report.verdict);
  if (!report.failing_clause.empty()) log << " (" << report.failing_clause << ')';
  log << '\n';
  return ExitCode::Ok;
}

ExitCode cmd_evolve(const RunConfig& config, std::ostream& log) {
  const auto params = WaveParams::make(config.c, config.k);
  const auto grid = circle(params, config);
  const auto profile = periodize(params, grid);
  const Output output(config, output_stem(config));

  auto u0 = profile.field();
  if (config.noise > 0.0) {
    const auto bump = random_smooth_field(grid, config.seed);
    for (std::size_t i = 0; i < u0.size(); ++i) u0.samples[i] += config.noise * bump[i];
  }

  EvolutionConfig evo;
  evo.dt = config.dt;
  evo.T = config.T;
  evo.integrating_factor = config.integrating_factor;
  evo.dealias = config.dealias;
  evo.series_stride = config.series_stride;
  evo.snapshot_stride = config.snapshot_stride;

  // Snapshots are handed to a writer thread so disk I/O overlaps stepping.
  BoundedQueue<Snapshot> queue(8);
  std::vector<std::string> snapshot_files;
  std::thread writer([&] {
    while (auto snap = queue.pop()) {
      const std::string suffix = "_snap" + std::to_string(snapshot_files.size()) + ".csv";
      auto csv = output.csv(suffix, "x,u");
      csv << "# t: " << snap->t << '\n';
      for (std::size_t i = 0; i < snap->u.size(); ++i) {
        csv << snap->u.grid.point(i) << ',' << snap->u[i] << '\n';
      }
      snapshot_files.push_back(output.stem() + suffix);
    }
  });

  std::optional<EvolutionResult> outcome;
  try {
    outcome = evolve(u0, params.k(), evo, [&](const Snapshot& s) { queue.push(s); });
  } catch (...) {
    queue.close();
    writer.join();
    throw;
  }
  queue.close();
  writer.join();
  const auto& result = *outcome;

  {
    auto csv = output.csv("_conserved.csv", "t,M,H,S");
    for (const auto& s : result.series) {
      csv << s.t << ',' << s.values.M << ',' << s.values.H << ',' << s.values.S << '\n';
    }
  }

  Json doc;
  doc["c"] = params.c();
  doc["k"] = params.k();
  doc["period"] = grid.period();
  doc["n"] = grid.size();
  doc["dt"] = config.dt;
  doc["T"] = config.T;
  doc["noise"] = config.noise;
  doc["seed"] = config.seed;
  doc["steps"] = result.steps;
  doc["t_final"] = result.t_final;
  doc["cfl_number"] = result.cfl_number;
  doc["halted"] = result.halted;
  doc["halt_reason"] = result.halt_reason;
  doc["drift"] = {{"M", number(result.max_drift.M)},
                  {"H", number(result.max_drift.H)},
                  {"S", number(result.max_drift.S)}};
  const double worst = std::max({result.max_drift.M, result.max_drift.H, result.max_drift.S});
  doc["drift_budget"] = config.tol.drift;
  doc["drift_within_budget"] = worst <= config.tol.drift;
  if (!result.halted) {
    // Distance to the translation orbit of the exact traveling wave at t_final.
    const auto shifted = profile;
    doc["orbit_distance"] = orbit_distance(result.final_state, shifted.field()).distance;
  }
  doc["series_file"] = output.stem() + "_conserved.csv";
  doc["snapshots"] = snapshot_files;

  if (config.sigma_T > 0.0 && !result.halted) {
    const auto dc = periodic_dphi_dc(params, grid);
    const auto probe = linearized_growth_probe(profile, dc, config.seed, 0.02, config.sigma_T);
    doc["sigma_fit"] = {{"seed", probe.seed},
                        {"T", config.sigma_T},
                        {"sigma", probe.fit.sigma},
                        {"std_error", probe.fit.std_error},
                        {"lower", probe.fit.lower},
                        {"upper", probe.fit.upper},
                        {"samples", probe.fit.samples}};
  }
  output.json("_manifest.json", doc);

  log << std::setprecision(3) << "steps " << result.steps << ", max drift " << worst << '\n';
  if (result.halted) {
    log << "halted: " << result.halt_reason << '\n';
    return ExitCode::Numerical;
  }
  if (worst > config.tol.drift) log << "warning: drift exceeds tol_drift\n";
  return ExitCode::Ok;
}

std::string range_stem(const RunConfig& config) {
  auto span = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi ? format_number(*lo) : format_number(*lo) + "-" + format_number(*hi);
  };
  return "sweep_c" + span(config.c_values) + "_k" + span(config.k_values);
}

ExitCode cmd_sweep(const RunConfig& config, std::ostream& log) {
  struct Point {
    double c;
    double k;
    std::optional<IndexReport> report;
    std::string status = "ok";
    std::string message;
  };
  std::vector<Point> points;
  for (double k : config.k_values) {
    for (double c : config.c_values) points.push_back({c, k, std::nullopt, "ok", {}});
  }

  const auto options = index_options(config);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  // Each worker owns the points it claims and the files they produce.
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      auto& p = points[i];
      RunConfig point_config = config;
      point_config.command = "index";
      point_config.c = p.c;
      point_config.k = p.k;
      try {
        const auto params = WaveParams::make(p.c, p.k);
        const auto profile = line_profile(params, point_config);
        p.report = index_report(profile, options);
        Output(point_config, output_stem(point_config)).json(".json", index_json(*p.report));
      } catch (const NumericalError& ex) {
        p.status = "numerical_failure";
        p.message = ex.what();
      }
      const std::lock_guard lock(log_mutex);
      log << "  c=" << format_number(p.c) << " k=" << format_number(p.k) << ": "
          << (p.report ? std::string(to_string(p.report->verdict)) : p.status) << '\n';
    }
  };
  std::vector<std::thread> pool;
  const std::size_t jobs = std::min(config.jobs, points.size());
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // Sequential merge.
  const Output output(config, range_stem(config));
  auto csv = output.csv(".csv",
                        "c,k,n_minus,lambda_star,quad_form,dSdc,defect,verdict,status");
  Json doc;
  doc["points"] = Json::array();
  std::size_t stable = 0;
  std::size_t failed = 0;
  for (const auto& p : points) {
    Json entry;
    if (p.report) {
      const auto& r = *p.report;
      csv << p.c << ',' << p.k << ',' << r.n_minus << ',' << r.lambda_star << ',' << r.quad_form
          << ',' << r.dSdc << ',' << r.defect << ',' << to_string(r.verdict) << ',' << p.status
          << '\n';
      entry = index_json(r);
      stable += r.verdict == Verdict::SpectrallyStable;
    } else {
      csv << p.c << ',' << p.k << ",,,,,,," << p.status << '\n';
      entry["c"] = p.c;
      entry["k"] = p.k;
      ++failed;
    }
    entry["status"] = p.status;
    entry["message"] = p.message;
    doc["points"].push_back(entry);
  }

  // lambda* along c at fixed k should move no faster than c itself.
  bool continuous = true;
  double worst_jump = 0.0;
  for (double k : config.k_values) {
    std::vector<const Point*> row;
    for (const auto& p : points) {
      if (p.k == k && p.report) row.push_back(&p);
    }
    std::sort(row.begin(), row.end(), [](auto* a, auto* b) { return a->c < b->c; });
    for (std::size_t i = 1; i < row.size(); ++i) {
      const double ratio = std::abs(row[i]->report->lambda_star - row[i - 1]->report->lambda_star) /
                           (row[i]->c - row[i - 1]->c);
      worst_jump = std::max(worst_jump, ratio);
      continuous = continuous && ratio <= 1.0;
    }
  }
  doc["stable_count"] = stable;
  doc["failed_count"] = failed;
  doc["lambda_star_max_slope"] = worst_jump;
  doc["lambda_star_continuous"] = continuous;
  output.json(".json", doc);

  log << stable << " of " << points.size() << " points SpectrallyStable";
  if (failed > 0) log << ", " << failed << " failed";
  log << (continuous ? "" : "; lambda* continuity check failed") << '\n';
  return failed > 0 ? ExitCode::Numerical : ExitCode::Ok;
}

ExitCode cmd_verify(const RunConfig& config, std::ostream& log) {
  const auto baseline = read_baseline(config.baseline);
  RunConfig named = config;
  named.c = baseline.c;
  named.k = baseline.k;
  const Output output(config, output_stem(named));

  const auto lines = compare(baseline, baseline_quantities(baseline.c, baseline.k, config.tol));
  Json doc;
  doc["baseline"] = config.baseline;
  doc["entries"] = Json::array();
  bool all_ok = true;
  log << std::setprecision(12);
  for (const auto& l : lines) {
    log << (l.ok ? "ok   " : "FAIL ") << l.name << ": expected " << l.expected << ", got "
        << l.actual << " (tol " << l.tol << ")\n";
    doc["entries"].push_back({{"name", l.name},
                              {"expected", l.expected},
                              {"actual", number(l.actual)},
                              {"tol", l.tol},
                              {"ok", l.ok}});
    all_ok = all_ok && l.ok;
  }
  doc["match"] = all_ok;
  output.json(".json", doc);
  return all_ok ? ExitCode::Ok : ExitCode::BaselineMismatch;
}

void add_options(CLI::App& app, RunConfig& config, std::string& config_path) {
  app.add_option("--c", config.c, "wave speed");
  app.add_option("--k", config.k, "dispersion parameter");
  app.add_option("--c-values,--c_values", config.c_values, "sweep speeds")->delimiter(',');
  app.add_option("--k-values,--k_values", config.k_values, "sweep dispersions")->delimiter(',');
  app.add_option("--L", config.L, "line half-width (0: from the tail rate)");
  app.add_option("--n", config.n, "line grid points (odd)");
  app.add_option("--period", config.period, "circle length (0: from the tail rate)");
  app.add_option("--n-periodic,--n_periodic", config.n_periodic, "circle points (power of two)");
  app.add_option("--dt", config.dt, "time step");
  app.add_option("--T", config.T, "duration");
  app.add_option("--delta-c,--delta_c", config.delta_c, "speed step for d phi/dc (0: 1e-4 c)");
  app.add_flag("--richardson,!--no-richardson", config.richardson, "Richardson d phi/dc");
  app.add_flag("--matrix-check,--matrix_check,!--no-matrix-check", config.matrix_check,
               "cross-check by matrix diagonalization");
  app.add_option("--noise", config.noise, "amplitude of the random initial perturbation");
  app.add_option("--seed", config.seed, "seed for random test vectors");
  app.add_option("--sigma-T,--sigma_T", config.sigma_T, "linearized run length (0 skips)");
  app.add_option("--series-stride,--series_stride", config.series_stride);
  app.add_option("--snapshot-stride,--snapshot_stride", config.snapshot_stride);
  app.add_flag("--integrating-factor,--integrating_factor,!--no-integrating-factor",
               config.integrating_factor);
  app.add_flag("--dealias,!--no-dealias", config.dealias);
  app.add_option("--jobs", config.jobs, "sweep worker threads");
  app.add_option("--out", config.out, "output directory");
  app.add_option("--baseline", config.baseline, "baseline JSON for verify");
  app.add_option("--tol-profile,--tol_profile", config.tol.profile);
  app.add_option("--tol-eig,--tol_eig", config.tol.eig);
  app.add_option("--tol-identity,--tol_identity", config.tol.identity);
  app.add_option("--tol-drift,--tol_drift,--drift-budget,--drift_budget", config.tol.drift);
  app.add_option("--tol-ode,--tol_ode", config.tol.ode);
  app.add_option("--tol-bisection,--tol_bisection", config.tol.bisection);
  app.add_option("--config", config_path, "flat key=value file; flags override it");
}

// Each `key=value` line becomes `--key=value`; `#` starts a comment.
std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") + 1 - first);
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("config line '" + line + "' is not key=value");
    if (eq + 1 == line.size()) continue;  // empty value keeps the default
    args.push_back("--" + line);
  }
  return args;
}

struct Parsed {
  int code = -1;  // >= 0: parsing ended with this exit code
  std::string command;
};

Parsed parse_into(RunConfig& config, std::string& config_path, const std::vector<std::string>& args,
                  std::ostream& out, std::ostream& err) {
  CLI::App app{"Degasperis-Procesi soliton stability lab"};
  app.require_subcommand(1);
  static const std::pair<const char*, const char*> commands[] = {
      {"profile", "solitary-wave profile on the line"},
      {"functionals", "conserved functionals and closed forms"},
      {"spectrum", "spectrum of the linearized operator"},
      {"index", "stability index report"},
      {"evolve", "time evolution on the circle"},
      {"sweep", "index reports over a (c, k) grid"},
      {"verify", "compare against a regression baseline"},
  };
  for (const auto& [name, help] : commands) {
    add_options(*app.add_subcommand(name, help), config, config_path);
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return {code == 0 ? 0 : static_cast<int>(ExitCode::Validation), {}};
  }
  return {-1, app.get_subcommands().front()->get_name()};
}

}  // namespace

ExitCode execute(const RunConfig& config, std::ostream& out) {
  const std::string& cmd = config.command;
  if (cmd == "profile") return cmd_profile(config, out);
  if (cmd == "functionals") return cmd_functionals(config, out);
  if (cmd == "spectrum") return cmd_spectrum(config, out);
  if (cmd == "index") return cmd_index(config, out);
  if (cmd == "evolve") return cmd_evolve(config, out);
  if (cmd == "sweep") return cmd_sweep(config, out);
  if (cmd == "verify") return cmd_verify(config, out);
  throw ValidationError("unknown command '" + cmd + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> args(argv, argv + argc);
  RunConfig config;
  std::string config_path;
  // A first pass finds the subcommand and --config; the file then supplies
  // defaults and the command line is applied again on top of them.
  RunConfig scratch;
  Parsed parsed = parse_into(scratch, config_path, args, out, err);
  if (parsed.code >= 0) return parsed.code;
  if (!config_path.empty()) {
    std::vector<std::string> file_args{args.front(), parsed.command};
    try {
      const auto extra = config_file_args(config_path);
      file_args.insert(file_args.end(), extra.begin(), extra.end());
    } catch (const ValidationError& ex) {
      err << "validation error: " << ex.what() << '\n';
      return static_cast<int>(ExitCode::Validation);
    }
    std::string nested;
    parsed = parse_into(config, nested, file_args, out, err);
    if (parsed.code >= 0) return parsed.code == 0 ? static_cast<int>(ExitCode::Validation) : parsed.code;
    if (!nested.empty()) {
      err << "validation error: config files cannot nest --config\n";
      return static_cast<int>(ExitCode::Validation);
    }
  }
  parsed = parse_into(config, config_path, args, out, err);
  if (parsed.code >= 0) return parsed.code;
  config.command = parsed.command;

  try {
    // The echo goes out before validation so rejected configs leave a record.
    std::error_code ec;
    fs::create_directories(config.out, ec);
    if (ec) throw ValidationError("cannot create output directory '" + config.out + "'");
    {
      RunConfig named = config;
      std::string stem = output_stem(named);
      if (config.command == "sweep" && !config.c_values.empty() && !config.k_values.empty()) {
        stem = range_stem(config);
      }
      std::ofstream echo_file(fs::path(config.out) / (stem + ".config"));
      echo_file << "# config_hash: " << config_hash(config) << '\n' << echo(config);
    }
    validate(config);
    return static_cast<int>(execute(config, out));
  } catch (const ValidationError& ex) {
    err << "validation error: " << ex.what() << '\n';
    return static_cast<int>(ExitCode::Validation);
  } catch (const NumericalError& ex) {
    err << "numerical error: " << ex.what() << '\n';
    return static_cast<int>(ExitCode::Numerical);
  }
}

}  // namespace dplab::cli
