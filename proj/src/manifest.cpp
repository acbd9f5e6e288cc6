#include "chebmat/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace chebmat {

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for hashing");
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["flags"] = m.flags;
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  j["input_hashes"] = m.input_hashes;
  j["outputs"] = m.outputs;
  j["wall_time_s"] = m.wall_time_s;
  return j.dump(2);
}

void write_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << manifest_to_json(m) << "\n";
}

}  // namespace chebmat
