#pragma once

// The treeinv command line. Exit codes: 0 verified, 1 counterexample found,
// 2 budget exhausted, 3 usage or parameter error.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace treeinv::cli {

inline constexpr int kVerified = 0;
inline constexpr int kCounterexample = 1;
inline constexpr int kBudget = 2;
inline constexpr int kUsage = 3;

struct RunConfig {
  std::string command;  // subcommand path, e.g. "gadget build"
  int depth = -1;
  int k = 2;
  int n = -1;
  int radius = -1;
  std::uint64_t budget = 100'000'000;
  int threads = 1;
  std::string out;
  std::uint64_t seed = 1;

  static constexpr int kMaxDepth = 14;
  static constexpr int kMaxRadius = 4;

  /// Throws Error(BadParams) for out-of-range fields.
  void validate() const;
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treeinv::cli
