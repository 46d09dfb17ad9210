#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace cvlab::cli {

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string config_hash;
  std::string version;
  std::optional<std::uint64_t> seed;
  std::string timestamp;  // UTC, ISO 8601
  std::optional<std::string> generator;

  [[nodiscard]] std::string to_json() const;
};

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// Hash of the canonical "key=value\n" rendering of `parameters` (sorted by key).
std::string config_hash(const std::map<std::string, std::string>& parameters);

std::string utc_timestamp();

std::string tool_version();

/// <output>.manifest.json
std::filesystem::path manifest_path(const std::filesystem::path& output);

void write_manifest(const std::filesystem::path& output, const RunManifest& manifest);

}  // namespace cvlab::cli
