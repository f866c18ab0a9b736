#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tetot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitFormat = 2;

/// Runs one subcommand. `args` excludes the program name. The JSON record
/// goes to `out` (or the --out file), the human summary and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tetot::cli
