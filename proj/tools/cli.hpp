#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace occelm::cli {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Runs one command line (args excludes the program name). Normal output
/// goes to `out`; diagnostics and timings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace occelm::cli
