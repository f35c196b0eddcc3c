#pragma once

#include <iosfwd>

namespace linechase::cli {

/// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
/// 3 a policy broke the line-chasing contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitContract = 3;

/// Entry point of `line-chase run|adversary|verify|sweep|opt`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace linechase::cli
