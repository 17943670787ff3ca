#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torusrot {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitPrecondition = 3;

// Splices the key/value pairs of a `--config file.json` object in as flags
// right after the subcommand, so explicit flags (parsed later) win.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

// args excludes the program name. Reports go to files named by flags, or to
// `out` when no file is given; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torusrot
