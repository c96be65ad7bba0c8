#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectral_reach/envgrid.hpp"
#include "spectral_reach/io.hpp"

namespace spectral_reach::cli {

struct LoadedMap {
  MazeSpec maze;
  std::string name;
};

/// Collects inputs, outputs and the resolved config of one run, then writes
/// <out>/manifest.json.
class RunContext {
public:
  RunContext(std::string command, std::vector<std::string> argv, std::filesystem::path out_dir);

  const std::filesystem::path& out_dir() const noexcept { return out_dir_; }
  nlohmann::json& config() noexcept { return config_; }

  /// `spec` is a file path or builtin:NAME; .json files and continuous
  /// builtins are discretized at `resolution` cells per unit.
  LoadedMap load_map(const std::string& spec, double resolution = 1.0);

  /// Reads a file and records its digest as an input.
  std::string read_input(const std::filesystem::path& path);

  /// Atomic write of <out>/<name>, recorded as an output.
  void write_output(const std::string& name, const std::string& content);

  void add_seed(std::uint64_t seed) { manifest_.seeds.push_back(seed); }

  void finish(int exit_code);

  const RunManifest& manifest() const noexcept { return manifest_; }

private:
  RunManifest manifest_;
  nlohmann::json config_ = nlohmann::json::object();
  std::filesystem::path out_dir_;
  bool finished_ = false;
};

/// "x,y" -> Cell. Throws InvalidInput.
Cell parse_cell(const std::string& text);

/// Dense state index of a cell; GoalIsWall when the cell is not floor.
std::size_t state_of(const MazeSpec& maze, Cell cell);

}  // namespace spectral_reach::cli
