#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace corrgraph {

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_bytes(const std::string& bytes);

struct ManifestFile {
  std::string path;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string command;
  std::string version;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<ManifestFile> inputs;
  std::vector<ManifestFile> artifacts;
  double wall_clock_seconds = 0.0;
  std::string started_utc;

  void add_input(const std::filesystem::path& path);
  /// Artifact paths are stored relative to `out_dir`.
  void add_artifact(const std::filesystem::path& out_dir, const std::filesystem::path& path);

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::ordered_json& j);
};

/// Writes `<out_dir>/manifest.json` through a temporary file and rename.
void write_manifest_atomic(const std::filesystem::path& out_dir, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

/// Re-hashes every input and artifact; returns the paths that differ.
std::vector<std::string> verify_manifest(const RunManifest& m, const std::filesystem::path& out_dir);

std::string library_version();

}  // namespace corrgraph
