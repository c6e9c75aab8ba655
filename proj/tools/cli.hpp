#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dpso::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `dpso` tool. args excludes the program name. Data goes
/// to files, the digest and single-run results to `out`, progress and
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpso::cli
