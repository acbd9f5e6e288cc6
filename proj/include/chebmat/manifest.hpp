#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace chebmat {

inline constexpr const char* kToolVersion = "0.1.0";

/// Run record written next to every command's outputs: the command, its full
/// flag set, the seed, input file hashes and the produced files. Exactly one
/// manifest per command execution.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> flags;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::map<std::string, std::string> input_hashes;  ///< path -> fnv1a64 hex
  std::vector<std::string> outputs;
  double wall_time_s = 0.0;
};

/// FNV-1a 64-bit hash of a file's bytes, as 16 hex digits.
std::string fnv1a64_file(const std::string& path);

std::string manifest_to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace chebmat
