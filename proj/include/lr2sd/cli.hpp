#pragma once

#include <iosfwd>

namespace lr2sd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitSolverError = 2;

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "LR2SD_OUTPUT_DIR";

/// Entry point behind the `lr2sd` executable: synth, solve, sweep, bench
/// and spectrum subcommands. Returns 0 on success, 1 on configuration or
/// I/O errors and 2 when a solver fails.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lr2sd::cli
