#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>


namespace spectral_reach {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Reads a whole file. Throws Io naming the path.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

struct FileDigest {
  std::string name;
  std::string fnv1a;
};

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string config_json = "{}";
  std::vector<std::uint64_t> seeds;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  int exit_code = 0;

  /// Deterministic: no timestamps or host details, so reruns compare byte for byte.
  std::string to_json() const;
  static RunManifest from_json(std::string_view text);
};

}  // namespace spectral_reach
