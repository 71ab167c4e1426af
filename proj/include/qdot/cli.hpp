// Command-line front end: argument parsing, subcommand dispatch and the
// CSV / JSON writers it uses.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdot/spectrum.hpp"

namespace qdot::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_numerical = 1,
    exit_usage = 2,
};

/// Parses argv, runs the subcommand, writes results to `out` (or --out) and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 17 significant digits.
std::string format_full(double x);

/// Two decimals, ties rounded away from zero.
std::string format_2dp(double x);

/// Shortest text that reads back to the same double.
std::string format_short(double x);

/// Parses "m:v:a:b" cells separated by ';'.
std::vector<DotParams> parse_cells(const std::string& text, double s);

/// Cells checked by oracle-check when none are given.
std::vector<DotParams> default_oracle_cells(double s);

}  // namespace qdot::cli
