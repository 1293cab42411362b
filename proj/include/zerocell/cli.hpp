#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zerocell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Parses argv (argv[0] is the program name) and writes the result to `out`,
/// diagnostics and usage text to `err`. Returns 0, 2 (usage or domain error)
/// or 3 (numeric failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zerocell::cli
