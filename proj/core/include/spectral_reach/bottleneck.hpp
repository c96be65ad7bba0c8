#pragma once

#include <string>
#include <vector>

#include "spectral_reach/spectral.hpp"

namespace spectral_reach {

struct Centrality {
  std::vector<double> values;
  /// Two states share coordinates, so distance sums tie spuriously.
  bool degenerate = false;
};

/// cent(s) = 1 / sum_{s' != s} embed_dist(e, s, s'). Requires at least two states.
Centrality centrality(const Embedding& e);

/// The ceil(fraction * |S|) states of highest centrality (lowest with
/// `invert`), ordered by rank. Values equal to ~12 significant digits count
/// as tied and go to the lower index.
std::vector<std::size_t> top_bottlenecks(const std::vector<double>& cent, double fraction, bool invert = false);

/// CSV: state_index,x,y,cent,selected.
std::string centrality_to_csv(const Embedding& e, const Centrality& cent, const std::vector<std::size_t>& selected);

}  // namespace spectral_reach
