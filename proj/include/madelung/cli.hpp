#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace madelung::cli {

enum ExitCode : int { kSuccess = 0, kComputationFailed = 1, kUsageError = 2 };

// Runs one command line (args excludes the program name) and returns the
// exit code. Output directories default to $MADELUNG_OUT_DIR, else ".".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

}  // namespace madelung::cli
