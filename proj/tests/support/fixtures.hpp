#pragma once

#include <string>

#include "spectral_reach/bundled_maps.hpp"
#include "spectral_reach/envgrid.hpp"
#include "spectral_reach/graph.hpp"

namespace fixtures {

inline const std::string kK2 = "####\n#..#\n####\n";
inline const std::string kP3 = "#####\n#...#\n#####\n";
inline const std::string kC4 = "####\n#..#\n#..#\n####\n";
inline const std::string kTwoRoom = "#######\n#..#..#\n#.....#\n#######\n";
inline const std::string kSplit = "#####\n#.#.#\n#####\n";

inline spectral_reach::MazeSpec bundled(const std::string& name) {
  return spectral_reach::parse_maze(*spectral_reach::bundled_map(name));
}

inline spectral_reach::StateGraph graph_of(const std::string& text) {
  return spectral_reach::build_graph(spectral_reach::parse_maze(text));
}

}  // namespace fixtures
