#include "spectral_reach/envgrid.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "spectral_reach/error.hpp"

namespace spectral_reach {
namespace {

std::string position(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double rect_distance(double px, double py, const WallRect& r) {
  const double dx = std::max({r.x - px, 0.0, px - (r.x + r.w)});
  const double dy = std::max({r.y - py, 0.0, py - (r.y + r.h)});
  return std::hypot(dx, dy);
}

bool inside_rect(double px, double py, const WallRect& r) {
  return px >= r.x && px <= r.x + r.w && py >= r.y && py <= r.y + r.h;
}

}  // namespace

MazeSpec::MazeSpec(int width, int height, std::vector<CellKind> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width_ <= 0 || height_ <= 0 || cells_.size() != static_cast<std::size_t>(width_) * height_) {
    throw Error(ErrorCode::RaggedRows, "cell count does not match " + std::to_string(width_) + "x" +
                                           std::to_string(height_));
  }
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const bool border = x == 0 || y == 0 || x == width_ - 1 || y == height_ - 1;
      if (border && is_floor(at({x, y}))) {
        throw Error(ErrorCode::OpenBorder, "non-wall border cell at " + position(y + 1, x + 1));
      }
    }
  }
  if (std::none_of(cells_.begin(), cells_.end(), is_floor)) {
    throw Error(ErrorCode::NoFloor, "maze has no floor cells");
  }
}

MazeSpec parse_maze(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::NoFloor, "empty map");
  if (text.back() == '\n') text.remove_suffix(1);

  std::vector<CellKind> cells;
  int width = -1;
  int height = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view row = text.substr(start, end - start);
    ++height;
    for (std::size_t col = 0; col < row.size(); ++col) {
      switch (row[col]) {
        case '#': cells.push_back(CellKind::Wall); break;
        case '.': cells.push_back(CellKind::Floor); break;
        case 'B': cells.push_back(CellKind::Bias); break;
        case 'G': cells.push_back(CellKind::Goal); break;
        default:
          throw Error(ErrorCode::UnknownCharacter,
                      "unexpected character '" + std::string(1, row[col]) + "' at " +
                          position(static_cast<std::size_t>(height), col + 1));
      }
    }
    if (width < 0) {
      width = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != width) {
      throw Error(ErrorCode::RaggedRows, "row " + std::to_string(height) + " has " +
                                             std::to_string(row.size()) + " cells, expected " +
                                             std::to_string(width));
    }
    start = end + 1;
  }
  if (width == 0) throw Error(ErrorCode::NoFloor, "empty map");
  return MazeSpec(width, height, std::move(cells));
}

std::string render_text(const MazeSpec& maze) {
  std::string out;
  out.reserve(static_cast<std::size_t>((maze.width() + 1) * maze.height()));
  for (int y = 0; y < maze.height(); ++y) {
    for (int x = 0; x < maze.width(); ++x) out.push_back(static_cast<char>(maze.at({x, y})));
    out.push_back('\n');
  }
  return out;
}

Cell step(const MazeSpec& maze, Cell s, Action a) {
  if (!maze.floor(s)) {
    throw Error(ErrorCode::InvalidState,
                "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ") is not a floor cell");
  }
  Cell next = s;
  switch (a) {
    case Action::Up: --next.y; break;
    case Action::Down: ++next.y; break;
    case Action::Left: --next.x; break;
    case Action::Right: ++next.x; break;
  }
  return maze.floor(next) ? next : s;
}

StateIndex::StateIndex(const MazeSpec& maze)
    : width_(maze.width()), height_(maze.height()),
      lookup_(static_cast<std::size_t>(maze.width()) * maze.height(), -1) {
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (maze.floor({x, y})) {
        lookup_[static_cast<std::size_t>(y * width_ + x)] = static_cast<long>(coords_.size());
        coords_.push_back({x, y});
      }
    }
  }
}

std::optional<std::size_t> StateIndex::index_of(Cell c) const noexcept {
  if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_) return std::nullopt;
  const long i = lookup_[static_cast<std::size_t>(c.y * width_ + c.x)];
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

void ContinuousMazeSpec::validate() const {
  if (!(width > 0) || !(height > 0)) throw Error(ErrorCode::InvalidInput, "bounding box must be positive");
  if (!(radius >= 0)) throw Error(ErrorCode::InvalidInput, "agent radius must be nonnegative");
  for (const auto& r : walls) {
    if (!(r.w >= 0) || !(r.h >= 0) || r.x < 0 || r.y < 0 || r.x + r.w > width || r.y + r.h > height) {
      throw Error(ErrorCode::InvalidInput, "wall rectangle outside the bounding box");
    }
  }
}

ContinuousMazeSpec parse_continuous_maze(std::string_view json_text) {
  ContinuousMazeSpec spec;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    spec.width = doc.at("width").get<double>();
    spec.height = doc.at("height").get<double>();
    spec.radius = doc.value("radius", 0.0);
    for (const auto& w : doc.value("walls", nlohmann::json::array())) {
      spec.walls.push_back({w.at("x").get<double>(), w.at("y").get<double>(), w.at("w").get<double>(),
                            w.at("h").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("continuous maze JSON: ") + e.what());
  }
  spec.validate();
  return spec;
}

MazeSpec discretize_continuous(const ContinuousMazeSpec& maze, double resolution) {
  maze.validate();
  if (!(resolution > 0)) throw Error(ErrorCode::InvalidInput, "resolution must be positive");
  const int nx = static_cast<int>(std::ceil(maze.width * resolution - 1e-9));
  const int ny = static_cast<int>(std::ceil(maze.height * resolution - 1e-9));
  const double cell = 1.0 / resolution;

  std::vector<CellKind> cells(static_cast<std::size_t>(nx + 2) * (ny + 2), CellKind::Wall);
  bool any_floor = false;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double cx = (i + 0.5) * cell;
      const double cy = (j + 0.5) * cell;
      const bool clear = std::all_of(maze.walls.begin(), maze.walls.end(), [&](const WallRect& r) {
        return !inside_rect(cx, cy, r) && rect_distance(cx, cy, r) >= maze.radius;
      });
      if (clear) {
        cells[static_cast<std::size_t>((j + 1) * (nx + 2) + (i + 1))] = CellKind::Floor;
        any_floor = true;
      }
    }
  }
  if (!any_floor) throw Error(ErrorCode::NoFloor, "no free cell at this resolution");
  return MazeSpec(nx + 2, ny + 2, std::move(cells));
}

}  // namespace spectral_reach
