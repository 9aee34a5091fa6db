#pragma once

#include <stdexcept>

#include "run_config.hpp"

namespace cyclegsp::cli {

/// Flag combinations the parser cannot reject on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fills subcommand-dependent defaults, runs the subcommand, writes the
/// config sidecar. Returns the process exit code.
int run(RunConfig& c);

}  // namespace cyclegsp::cli
