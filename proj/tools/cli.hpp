#pragma once
#include <ostream>
#include <string>
#include <vector>

namespace dtqft::cli {

// exit codes
constexpr int kOk = 0;
constexpr int kComputationError = 1;
constexpr int kParseError = 2;

// overrides the default tolerance of every subcommand
constexpr const char* kToleranceEnv = "DTQFT_TOLERANCE";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtqft::cli
