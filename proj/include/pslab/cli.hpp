#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pslab::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< resource budget or internal check failed
inline constexpr int kExitUsage = 2;

/// Parses and executes one command line (args exclude the program name).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Reads `key = value` lines; see docs/config.md for the grammar.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in);

/// Expands "--params 'k=v;k2=v2'" into "--k v --k2 v2" and appends the
/// contents of "--config FILE" after the command line, so config entries win.
std::vector<std::string> expand_arguments(std::vector<std::string> args);

}  // namespace pslab::cli
