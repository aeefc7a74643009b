#pragma once

namespace binq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad flags or flag combinations
inline constexpr int kExitInput = 3;    // unreadable/malformed input files
inline constexpr int kExitCompute = 4;  // contract violations, degenerate data

int run(int argc, const char* const* argv);

}  // namespace binq::cli
