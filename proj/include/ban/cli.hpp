#pragma once

// Command-line front end: analyze, predict, verify, sequence, replay.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ban/dynamics.hpp"
#include "ban/io.hpp"

namespace ban {

inline constexpr const char* kToolVersion = "ban 1.0.0";

namespace exit_code {
inline constexpr int kPass = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCap = 3;
inline constexpr int kDiscrepancy = 4;
}  // namespace exit_code

/// Everything needed to reproduce a run; embedded in every artifact.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string input;  // descriptor or network-spec path
  std::string mode;
  Caps caps;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  std::string version = kToolVersion;

  Json to_json() const;
};

/// Runs one command line (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ban
