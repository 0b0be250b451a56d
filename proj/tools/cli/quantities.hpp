#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace dplab::cli {

struct Quantity {
  std::string name;
  double value;
};

/// Scalars tracked by the regression baseline, computed by the library at
/// (c, k) under the given tolerances.
std::vector<Quantity> baseline_quantities(double c, double k, const Tolerances& tol);

struct BaselineEntry {
  std::string name;
  double value;
  double tol;
};

struct Baseline {
  double c = 1.0;
  double k = 0.25;
  std::vector<BaselineEntry> entries;
};

/// Throws ValidationError on unreadable or malformed files.
Baseline read_baseline(const std::string& path);
void write_baseline(const Baseline& baseline, const std::string& path);

struct VerifyLine {
  std::string name;
  double expected;
  double actual;
  double tol;
  bool ok;
};

std::vector<VerifyLine> compare(const Baseline& baseline, const std::vector<Quantity>& actual);

}  // namespace dplab::cli
