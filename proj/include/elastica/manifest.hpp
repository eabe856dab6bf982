#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace elastica {

// Every CLI invocation writes one of these next to its primary output,
// whatever the outcome, so runs are reproducible from the artifact alone.
struct RunManifest {
  std::string command_line;
  nlohmann::json config = nlohmann::json::object();  // parsed options echo
  std::vector<std::pair<std::string, std::string>> inputs;  // path, fnv1a-64 hex
  std::string tool_version;
  double wall_seconds = 0.0;
  std::string status = "ok";  // ok | validation-error | numerical-abort
  std::string abort_reason;   // empty unless aborted / failed
};

// FNV-1a 64 over the file bytes, as 16 hex digits.
std::string hash_file(const std::string& path);

void add_input(RunManifest& manifest, const std::string& path);

void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace elastica
