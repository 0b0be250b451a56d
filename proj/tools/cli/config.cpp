#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dplab/errors.hpp"
#include "dplab/grid.hpp"
#include "dplab/params.hpp"

namespace dplab::cli {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void require_positive(double value, const char* name) {
  require(std::isfinite(value) && value > 0.0, std::string(name) + " must be positive");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

}  // namespace

void validate(const RunConfig& config) {
  static const char* commands[] = {"profile", "functionals", "spectrum", "index",
                                   "evolve",  "sweep",       "verify"};
  bool known = false;
  for (const char* name : commands) known = known || config.command == name;
  require(known, "unknown command '" + config.command + "'");

  if (config.command == "sweep") {
    require(!config.c_values.empty(), "sweep needs a nonempty c range");
    require(!config.k_values.empty(), "sweep needs a nonempty k range");
    for (double c : config.c_values) {
      for (double k : config.k_values) WaveParams::make(c, k);
    }
  } else if (config.command != "verify") {
    WaveParams::make(config.c, config.k);
  }

  require(config.L >= 0.0 && std::isfinite(config.L), "L must be nonnegative");
  require(config.n >= 7 && config.n % 2 == 1, "n must be odd and at least 7");
  require(config.period >= 0.0 && std::isfinite(config.period), "period must be nonnegative");
  require(is_power_of_two(config.n_periodic) && config.n_periodic >= 16,
          "n_periodic must be a power of two, at least 16");
  require(std::isfinite(config.dt) && config.dt != 0.0, "dt must be finite and nonzero");
  require(std::isfinite(config.T) && config.T >= 0.0, "T must be nonnegative");
  require(config.delta_c >= 0.0, "delta_c must be nonnegative");
  require(config.noise >= 0.0 && std::isfinite(config.noise), "noise must be nonnegative");
  require(config.sigma_T >= 0.0, "sigma_T must be nonnegative");
  require(config.series_stride > 0, "series_stride must be positive");
  require(config.jobs > 0, "jobs must be positive");
  require_positive(config.tol.profile, "tol_profile");
  require_positive(config.tol.eig, "tol_eig");
  require_positive(config.tol.identity, "tol_identity");
  require_positive(config.tol.drift, "tol_drift");
  require_positive(config.tol.ode, "tol_ode");
  require_positive(config.tol.bisection, "tol_bisection");
  if (config.command == "verify") require(!config.baseline.empty(), "verify needs --baseline");
}

std::string echo(const RunConfig& config) {
  std::ostringstream out;
  auto line = [&](const char* key, const std::string& value) { out << key << '=' << value << '\n'; };
  auto num = [&](const char* key, double value) { line(key, format_number(value)); };
  auto count = [&](const char* key, std::uint64_t value) { line(key, std::to_string(value)); };
  auto flag = [&](const char* key, bool value) { line(key, value ? "true" : "false"); };

  out << "# command " << config.command << '\n';
  num("c", config.c);
  num("k", config.k);
  line("c_values", join(config.c_values));
  line("k_values", join(config.k_values));
  num("L", config.L);
  count("n", config.n);
  num("period", config.period);
  count("n_periodic", config.n_periodic);
  num("dt", config.dt);
  num("T", config.T);
  num("delta_c", config.delta_c);
  flag("richardson", config.richardson);
  flag("matrix_check", config.matrix_check);
  num("noise", config.noise);
  count("seed", config.seed);
  num("sigma_T", config.sigma_T);
  count("series_stride", config.series_stride);
  count("snapshot_stride", config.snapshot_stride);
  flag("integrating_factor", config.integrating_factor);
  flag("dealias", config.dealias);
  count("jobs", config.jobs);
  line("out", config.out);
  line("baseline", config.baseline);
  out << "# tolerances\n";
  num("tol_profile", config.tol.profile);
  num("tol_eig", config.tol.eig);
  num("tol_identity", config.tol.identity);
  num("tol_drift", config.tol.drift);
  num("tol_ode", config.tol.ode);
  num("tol_bisection", config.tol.bisection);
  return out.str();
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_number(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

std::string output_stem(const RunConfig& config) {
  return config.command + "_c" + format_number(config.c) + "_k" + format_number(config.k);
}

}  // namespace dplab::cli
