#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nodal/core/json_io.hpp"
#include "nodal/core/verdict.hpp"

namespace nodal::cli {

inline constexpr int kExitUsage = 64;
inline constexpr int kExitFormat = 65;

/// Provenance block attached to every JSON output.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::uint64_t seed = 0;
  std::string version;
  double wall_time_ms = 0;
  std::string verdict;
};

Json to_json(const RunManifest& m);

/// Runs one command line (args excludes the program name). Returns the exit
/// code: 0 Certified or success, 1 Refuted, 2 Inconclusive, 64 usage, 65 bad data.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nodal::cli
