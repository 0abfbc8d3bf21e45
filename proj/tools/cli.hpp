#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hcube::cli {

/// Exit codes: 0 ok, 1 a check failed, 2 input or domain error.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcube::cli
