#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdode {

enum ExitCode { exit_ok = 0, exit_usage = 1, exit_problem = 2, exit_numerical = 3 };

/// Runs one subcommand (solve, adm, check, convergence, compare). args excludes
/// the program name. Data files go to --out (default "."), messages to out/err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest-safe CSV number: 17 significant digits, locale independent.
std::string csv_number(double x);

const char* tool_version() noexcept;

}  // namespace fdode
