#pragma once

// Subcommand drivers shared by the command-line tool and the tests.  Every
// report starts with `command: <name>` and the canonical spec, then one
// `key: value` fact per line.

#include <cstdint>
#include <string>

namespace pgl {

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string spec2_path;
  std::uint64_t stages = 2000;
  std::uint64_t budget = 2000;
  std::uint64_t bound = 1024;
  std::uint64_t seed = 0;
  std::uint32_t length = 1;
  std::string out_path;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSpecError = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitViolation = 4;

struct RunResult {
  int exit_code = kExitOk;
  std::string report;
};

RunResult run(const RunConfig& config);

}  // namespace pgl
