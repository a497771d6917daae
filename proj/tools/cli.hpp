#pragma once

#include <ostream>

namespace tps::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // component error, one-line diagnostic on err
inline constexpr int kUsage = 2;    // bad flags

// Subcommands: generate, cluster, partition, metrics, sweep.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tps::cli
