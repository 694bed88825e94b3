#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace wwent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1; // domain/config error or failed verification
inline constexpr int kExitUsage = 2;   // unknown flag or malformed command line

// Flat "key = value" lines; '#' starts a comment. Throws ConfigError on a
// line without '=' or an empty key.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// args excludes the program name. Subcommands: sweep-epsilon, sweep-delta,
// sweep-time, fidelity-grid, oracle-check, verify.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wwent::cli
