#pragma once

#include <ostream>

namespace yoro::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnsat = 1;  // also: solver limit exceeded
inline constexpr int kExitUsage = 2;  // bad flags, unreadable or malformed input
inline constexpr int kExitVerify = 3; // decoded grid violates adjacency or path

// Entry point of the `yoro` tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace yoro::cli
