#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gammaconv::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kNoConvergence = 3,
    kFitFailure = 4,
};

/// Runs the command line (args excludes the program name) against the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats a value with 17 significant digits, enough to round-trip a double.
std::string format_value(double v);

}  // namespace gammaconv::cli
