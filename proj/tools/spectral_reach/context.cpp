#include "context.hpp"

#include <charconv>

#include "spectral_reach/bundled_maps.hpp"
#include "spectral_reach/error.hpp"

namespace spectral_reach::cli {

RunContext::RunContext(std::string command, std::vector<std::string> argv, std::filesystem::path out_dir)
    : out_dir_(std::move(out_dir)) {
  manifest_.command = std::move(command);
  manifest_.argv = std::move(argv);
}

LoadedMap RunContext::load_map(const std::string& spec, double resolution) {
  constexpr std::string_view kBuiltin = "builtin:";
  config_["map"] = spec;
  if (spec.starts_with(kBuiltin)) {
    const auto name = spec.substr(kBuiltin.size());
    if (auto text = bundled_map(name)) {
      manifest_.inputs.push_back({spec, fnv1a_hex(*text)});
      return {parse_maze(*text), name};
    }
    if (auto text = bundled_continuous_maze(name)) {
      manifest_.inputs.push_back({spec, fnv1a_hex(*text)});
      config_["resolution"] = resolution;
      return {discretize_continuous(parse_continuous_maze(*text), resolution), name};
    }
    throw Error(ErrorCode::Io, "no bundled map named '" + name + "'");
  }
  const std::filesystem::path path(spec);
  const auto text = read_input(path);
  if (path.extension() == ".json") {
    config_["resolution"] = resolution;
    return {discretize_continuous(parse_continuous_maze(text), resolution), path.stem().string()};
  }
  try {
    return {parse_maze(text), path.stem().string()};
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string RunContext::read_input(const std::filesystem::path& path) {
  auto text = read_file(path);
  manifest_.inputs.push_back({path.string(), fnv1a_hex(text)});
  return text;
}

void RunContext::write_output(const std::string& name, const std::string& content) {
  write_atomic(out_dir_ / name, content);
  manifest_.outputs.push_back({name, fnv1a_hex(content)});
}

void RunContext::finish(int exit_code) {
  if (finished_) return;
  finished_ = true;
  manifest_.exit_code = exit_code;
  manifest_.config_json = config_.dump();
  write_atomic(out_dir_ / "manifest.json", manifest_.to_json());
}

Cell parse_cell(const std::string& text) {
  const auto comma = text.find(',');
  Cell c;
  auto parse = [&](std::string_view part, int& value) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    return ec == std::errc{} && ptr == part.data() + part.size();
  };
  const std::string_view view(text);
  if (comma == std::string::npos || !parse(view.substr(0, comma), c.x) || !parse(view.substr(comma + 1), c.y)) {
    throw Error(ErrorCode::InvalidInput, "expected a cell as x,y but got '" + text + "'");
  }
  return c;
}

std::size_t state_of(const MazeSpec& maze, Cell cell) {
  const StateIndex index(maze);
  if (auto s = index.index_of(cell)) return *s;
  throw Error(ErrorCode::GoalIsWall,
              "cell (" + std::to_string(cell.x) + "," + std::to_string(cell.y) + ") is not a floor cell");
}

}  // namespace spectral_reach::cli
