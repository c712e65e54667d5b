#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace saltice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the directory for relative output paths.
inline constexpr const char* kOutputDirEnv = "SALTICE_OUTPUT_DIR";

/// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace saltice::cli
