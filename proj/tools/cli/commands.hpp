#pragma once

#include <iosfwd>

#include "config.hpp"

namespace dplab::cli {

/// Parses flags (and an optional `--config` file, overridden by flags),
/// validates, dispatches, and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Dispatch on an already validated config. Throws ValidationError or
/// NumericalError; returns the exit code otherwise.
ExitCode execute(const RunConfig& config, std::ostream& out);

}  // namespace dplab::cli
