#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spectral_reach/spectral.hpp"

namespace spectral_reach::cli {

/// Distance-to-goal on the grid spanned by the embedding's coordinates.
/// Cells without a state (walls) hold nullopt.
struct DistanceGrid {
  int width = 0;
  int height = 0;
  std::vector<std::optional<double>> values;  // row-major
};

/// The grid covers columns 0..max_x+1 and rows 0..max_y+1 so the wall
/// border is kept. Throws GoalIsWall when no state sits at `goal`.
DistanceGrid distance_grid(const Embedding& e, Cell goal, bool normalize);

/// Rows of comma-separated values; walls are empty fields.
std::string grid_to_csv(const DistanceGrid& grid);

/// Linear interpolation through (68,1,84), (33,145,140), (253,231,37) for t in [0, 1].
std::array<unsigned char, 3> colormap(double t);

/// Binary PPM (P6), `scale` pixels per cell, walls black, values rescaled to [0, 1].
std::string grid_to_ppm(const DistanceGrid& grid, int scale = 8);

}  // namespace spectral_reach::cli
