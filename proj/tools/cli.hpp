#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace polytile::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;
inline constexpr int kHypothesisNotMet = 3;
inline constexpr int kInternalError = 4;

struct JobConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  int radius = 5;
  std::string tol = "1e-20";
  unsigned precision = 50;
  std::size_t threads = 1;
  std::string output_path;  // plot only
  bool skip_validation = false;
  bool pretty = false;
  std::string method;
  bool relaxed = false;
};

// args excludes the program name. The report goes to `out`, diagnostics to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polytile::cli
