#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace kshift {

inline constexpr int kSchemaVersion = 1;

enum class ExitCode : int { kOk = 0, kVerificationFailure = 1, kInputError = 2 };

struct RunConfig {
  std::string subcommand;
  std::string group_path;
  std::optional<std::size_t> window;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  std::string lemma = "all";
  int max_window = 2;
  std::string element_path;
  unsigned jobs = 1;
  bool timings = false;
};

/// Safety caps on user-supplied sizes.
inline constexpr std::size_t kMaxWindow = 16;
inline constexpr std::size_t kMaxBudget = 10'000'000;

/// Elements for `decompose` come from `element_path` or, when empty, from `in`.
int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace kshift
