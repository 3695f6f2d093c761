#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpplab::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kCapacity = 3;
constexpr int kVerificationFailed = 4;

// Runs the command line; errors are written to err as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpplab::cli
