#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spectral_reach {

enum class CellKind : char { Wall = '#', Floor = '.', Bias = 'B', Goal = 'G' };

inline bool is_floor(CellKind kind) noexcept { return kind != CellKind::Wall; }

/// Grid coordinate; x is the column, y the row (row 0 at the top).
struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class Action { Up, Down, Left, Right };

inline constexpr std::array<Action, 4> kActions{Action::Up, Action::Down, Action::Left, Action::Right};

/// A rectangular maze with a wall border. Floor cells may carry a bias tag
/// (used by the coverage sampler) or a goal-candidate tag.
class MazeSpec {
public:
  MazeSpec(int width, int height, std::vector<CellKind> cells);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool in_bounds(Cell c) const noexcept { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  CellKind at(Cell c) const { return cells_.at(static_cast<std::size_t>(c.y * width_ + c.x)); }
  bool floor(Cell c) const noexcept { return in_bounds(c) && is_floor(at(c)); }

  const std::vector<CellKind>& cells() const noexcept { return cells_; }

  friend bool operator==(const MazeSpec&, const MazeSpec&) = default;

private:
  int width_;
  int height_;
  std::vector<CellKind> cells_;
};

/// Parses the ASCII map alphabet {'#', '.', 'B', 'G'} with '\n' row separators.
/// A single trailing newline is accepted. Errors carry line:column positions.
MazeSpec parse_maze(std::string_view text);

/// Canonical text form: rows joined by '\n', with a trailing newline.
std::string render_text(const MazeSpec& maze);

/// Deterministic move; bumping a wall leaves the agent in place.
Cell step(const MazeSpec& maze, Cell s, Action a);

/// Dense row-major numbering of the floor cells.
class StateIndex {
public:
  explicit StateIndex(const MazeSpec& maze);

  std::size_t size() const noexcept { return coords_.size(); }
  Cell coord(std::size_t state) const { return coords_.at(state); }
  const std::vector<Cell>& coords() const noexcept { return coords_; }

  /// Dense index of a floor cell, or nullopt for walls and out-of-range cells.
  std::optional<std::size_t> index_of(Cell c) const noexcept;

private:
  int width_;
  int height_;
  std::vector<Cell> coords_;
  std::vector<long> lookup_;
};

struct WallRect {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;
};

/// Continuous maze: a bounding box with axis-aligned wall rectangles and a disk agent.
struct ContinuousMazeSpec {
  double width = 0;
  double height = 0;
  double radius = 0;
  std::vector<WallRect> walls;

  /// Throws InvalidInput on non-positive extents, negative radius or walls outside the box.
  void validate() const;
};

/// Reads {width, height, radius, walls:[{x,y,w,h}...]}.
ContinuousMazeSpec parse_continuous_maze(std::string_view json_text);

/// Overlays a grid with `resolution` cells per length unit. A cell is floor
/// when its center lies outside every wall rectangle and the clearance to each
/// rectangle is at least the agent radius (touching is allowed). The result is
/// padded with a one-cell wall border.
MazeSpec discretize_continuous(const ContinuousMazeSpec& maze, double resolution);

}  // namespace spectral_reach
