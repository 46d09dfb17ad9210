#include "cvlab/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#ifdef CVLAB_JSON_SINGLE_HEADER
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif

#include "cvlab/error.hpp"

namespace cvlab::cli {

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["config_hash"] = config_hash;
  j["version"] = version;
  if (seed) j["seed"] = *seed;
  if (generator) j["generator"] = *generator;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const std::map<std::string, std::string>& parameters) {
  std::string canonical;
  for (const auto& [key, value] : parameters) canonical += key + "=" + value + "\n";
  return fnv1a_hex(canonical);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string tool_version() { return CVLAB_VERSION; }

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  return output.string() + ".manifest.json";
}

void write_manifest(const std::filesystem::path& output, const RunManifest& manifest) {
  std::ofstream file(manifest_path(output));
  require(static_cast<bool>(file), "cannot write " + manifest_path(output).string());
  file << manifest.to_json();
}

}  // namespace cvlab::cli
