#pragma once

#include <iosfwd>
#include <optional>

#include "spie/config.hpp"

namespace spie {

struct RunOptions {
  int threads = 1;
  bool no_timestamp = false;
  std::optional<std::filesystem::path> dump_matrix;
};

/// Executes the configured command (solve, capmatrix or sweep), writing the
/// summary and any field files. Throws InputError / NumericalError.
void run(const RunConfig& config, const RunOptions& options = {});

/// Convenience wrapper used by the CLI: parses the config, runs it, and maps
/// errors to exit codes (0 success, 1 input error, 2 numerical failure),
/// logging diagnostics to `err`.
int run_cli(const std::filesystem::path& config_path, const RunOptions& options,
            std::ostream& err);

}  // namespace spie
