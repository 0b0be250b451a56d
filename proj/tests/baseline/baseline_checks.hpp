#pragma once

#include <string>
#include <vector>

#include "quantities.hpp"

namespace baseline {

/// One baseline quantity next to the independent value it must reproduce
/// before it may be frozen.
struct OracleCheck {
  std::string name;
  std::string oracle;  // how the reference value is obtained
  double library;
  double reference;
  double tol;  // allowed |library - reference|
  bool ok() const;
};

std::vector<OracleCheck> oracle_checks(double c, double k);

/// Regression tolerance stored with each frozen entry.
double regression_tol(double value);

dplab::cli::Baseline freeze(double c, double k, const std::vector<OracleCheck>& checks);

}  // namespace baseline
