#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "extremal/bounds.hpp"

namespace extremal::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSizeLimit = 3;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Fixed six decimals below 1e15, otherwise ten significant digits in
/// scientific notation.
std::string format_log_value(const LogValue& v);

}  // namespace extremal::cli
