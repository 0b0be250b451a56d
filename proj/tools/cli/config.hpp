#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dplab::cli {

enum class ExitCode : int { Ok = 0, Validation = 1, Numerical = 2, BaselineMismatch = 3 };

struct Tolerances {
  double profile = 1e-8;
  double eig = 1e-6;
  double identity = 1e-3;
  double drift = 1e-8;
  double ode = 1e-10;
  double bisection = 1e-12;
};

struct RunConfig {
  std::string command;
  double c = 1.0;
  double k = 0.25;
  std::vector<double> c_values;
  std::vector<double> k_values;

  double L = 0.0;                // 0 sizes the line grid from the tail rate
  std::size_t n = 4097;          // line grid points, odd
  double period = 0.0;           // 0 sizes the circle from the tail rate
  std::size_t n_periodic = 512;  // circle points, power of two
  double dt = 0.01;
  double T = 10.0;

  double delta_c = 0.0;  // 0 selects 1e-4 c
  bool richardson = false;
  bool matrix_check = true;

  double noise = 0.0;
  std::uint64_t seed = 1;
  double sigma_T = 200.0;  // linearized run for the growth fit; 0 skips it
  std::size_t series_stride = 100;
  std::size_t snapshot_stride = 0;
  bool integrating_factor = false;
  bool dealias = true;

  std::size_t jobs = 1;
  std::string out = ".";
  std::string baseline;
  Tolerances tol;
};

/// Throws ValidationError naming the first offending field.
void validate(const RunConfig& config);

/// Every field with defaults resolved, one `key=value` per line in a fixed
/// order.
std::string echo(const RunConfig& config);

/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

inline std::string config_hash(const RunConfig& config) { return fnv1a_hex(echo(config)); }

/// Shortest round-trip rendering used in file names, e.g. 0.25 -> "0.25".
std::string format_number(double value);

/// `<command>_c<c>_k<k>`.
std::string output_stem(const RunConfig& config);

}  // namespace dplab::cli
