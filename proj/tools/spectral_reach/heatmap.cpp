#include "heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectral_reach/error.hpp"

namespace spectral_reach::cli {

DistanceGrid distance_grid(const Embedding& e, Cell goal, bool normalize) {
  if (e.coords.size() != e.states()) throw Error(ErrorCode::InvalidInput, "embedding carries no coordinates");
  DistanceGrid grid;
  for (const Cell& c : e.coords) {
    grid.width = std::max(grid.width, c.x + 2);
    grid.height = std::max(grid.height, c.y + 2);
  }
  const auto it = std::find(e.coords.begin(), e.coords.end(), goal);
  if (it == e.coords.end()) {
    throw Error(ErrorCode::GoalIsWall,
                "goal (" + std::to_string(goal.x) + "," + std::to_string(goal.y) + ") is not a floor cell");
  }
  const Eigen::VectorXd dist = distances_to(e, static_cast<std::size_t>(it - e.coords.begin()));
  const double top = dist.size() > 0 ? dist.maxCoeff() : 0.0;
  grid.values.assign(static_cast<std::size_t>(grid.width * grid.height), std::nullopt);
  for (std::size_t s = 0; s < e.states(); ++s) {
    const Cell c = e.coords[s];
    double v = dist[static_cast<Eigen::Index>(s)];
    if (normalize && top > 0) v /= top;
    grid.values[static_cast<std::size_t>(c.y * grid.width + c.x)] = v;
  }
  return grid;
}

std::string grid_to_csv(const DistanceGrid& grid) {
  std::ostringstream out;
  out.precision(17);
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      if (x > 0) out << ',';
      if (const auto& v = grid.values[static_cast<std::size_t>(y * grid.width + x)]) out << *v;
    }
    out << '\n';
  }
  return out.str();
}

std::array<unsigned char, 3> colormap(double t) {
  static constexpr double kStops[3][3] = {{68, 1, 84}, {33, 145, 140}, {253, 231, 37}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  const int lo = t < 0.5 ? 0 : 1;
  const double u = t < 0.5 ? t * 2.0 : (t - 0.5) * 2.0;
  std::array<unsigned char, 3> rgb{};
  for (int k = 0; k < 3; ++k) {
    rgb[static_cast<std::size_t>(k)] =
        static_cast<unsigned char>(std::lround(kStops[lo][k] + u * (kStops[lo + 1][k] - kStops[lo][k])));
  }
  return rgb;
}

std::string grid_to_ppm(const DistanceGrid& grid, int scale) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& v : grid.values) {
    if (v) {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::string header = "P6\n" + std::to_string(grid.width * scale) + " " + std::to_string(grid.height * scale) + "\n255\n";
  std::string pixels;
  pixels.reserve(static_cast<std::size_t>(grid.width * grid.height * scale * scale * 3));
  for (int y = 0; y < grid.height * scale; ++y) {
    for (int x = 0; x < grid.width * scale; ++x) {
      const auto& v = grid.values[static_cast<std::size_t>((y / scale) * grid.width + x / scale)];
      const auto rgb = v ? colormap((*v - lo) / span) : std::array<unsigned char, 3>{0, 0, 0};
      pixels.append(reinterpret_cast<const char*>(rgb.data()), 3);
    }
  }
  return header + pixels;
}

}  // namespace spectral_reach::cli
