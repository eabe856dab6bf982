#include "elastica/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "elastica/constants.hpp"
#include "elastica/errors.hpp"

namespace elastica {

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("manifest: cannot open input '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return std::string(hex);
}

void add_input(RunManifest& manifest, const std::string& path) {
  manifest.inputs.emplace_back(path, hash_file(path));
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json root;
  root["command_line"] = manifest.command_line;
  root["config"] = manifest.config;
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& [file, digest] : manifest.inputs)
    inputs.push_back({{"path", file}, {"fnv1a64", digest}});
  root["inputs"] = std::move(inputs);
  root["tool_version"] = manifest.tool_version.empty() ? kToolVersion : manifest.tool_version;
  root["wall_seconds"] = manifest.wall_seconds;
  root["status"] = manifest.status;
  if (!manifest.abort_reason.empty()) root["abort_reason"] = manifest.abort_reason;

  std::ofstream out(path);
  if (!out) throw ValidationError("manifest: cannot write '" + path + "'");
  out << root.dump(2) << "\n";
}

}  // namespace elastica
