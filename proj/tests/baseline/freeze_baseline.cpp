// Writes the regression baseline after every entry has been reproduced by its
// independent oracle. With --check, compares an existing baseline file to the
// oracles instead of writing.
#include <cstdio>
#include <cstring>
#include <exception>
#include <string>

#include "baseline_checks.hpp"

int main(int argc, char** argv) {
  bool check_only = false;
  std::string path;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--check") == 0) {
      check_only = true;
    } else {
      path = argv[i];
    }
  }
  if (path.empty()) {
    std::fprintf(stderr, "usage: freeze_baseline [--check] <baseline.json>\n");
    return 1;
  }

  try {
    double c = 1.0;
    double k = 0.25;
    dplab::cli::Baseline stored;
    if (check_only) {
      stored = dplab::cli::read_baseline(path);
      c = stored.c;
      k = stored.k;
    }
    const auto checks = baseline::oracle_checks(c, k);
    bool ok = true;
    for (const auto& check : checks) {
      double value = check.library;
      if (check_only) {
        bool found = false;
        for (const auto& e : stored.entries) {
          if (e.name == check.name) {
            value = e.value;
            found = true;
          }
        }
        if (!found) {
          std::printf("MISSING %s\n", check.name.c_str());
          ok = false;
          continue;
        }
      }
      const bool agree = std::abs(value - check.reference) <= check.tol;
      ok = ok && agree;
      std::printf("%-4s %-18s %.15g vs %.15g (tol %.1e, %s)\n", agree ? "ok" : "FAIL",
                  check.name.c_str(), value, check.reference, check.tol, check.oracle.c_str());
    }
    if (check_only && stored.entries.size() != checks.size()) {
      std::printf("FAIL entry count %zu, expected %zu\n", stored.entries.size(), checks.size());
      ok = false;
    }
    if (!ok) return 1;
    if (!check_only) {
      dplab::cli::write_baseline(baseline::freeze(c, k, checks), path);
      std::printf("wrote %s\n", path.c_str());
    }
    return 0;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
