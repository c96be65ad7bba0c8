#include "spectral_reach/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spectral_reach/error.hpp"
#include "spectral_reach/parallel.hpp"

namespace spectral_reach {

Centrality centrality(const Embedding& e) {
  const std::size_t n = e.states();
  if (n < 2) throw Error(ErrorCode::InvalidInput, "centrality needs at least two states");
  Centrality out;
  out.values.resize(n);
  std::vector<char> coincident(n, 0);
  parallel_for(n, [&](std::size_t s) {
    double sum = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s) continue;
      const double dist = embed_dist(e, s, t);
      if (dist == 0.0) coincident[s] = 1;
      sum += dist;
    }
    out.values[s] = sum > 0 ? 1.0 / sum : INFINITY;
  });
  out.degenerate = std::any_of(coincident.begin(), coincident.end(), [](char c) { return c != 0; });
  return out;
}

std::vector<std::size_t> top_bottlenecks(const std::vector<double>& cent, double fraction, bool invert) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error(ErrorCode::InvalidConfig, "fraction must lie in (0, 1]");
  const std::size_t n = cent.size();
  // A small relative slack keeps 0.2 * 10 from rounding up to 3.
  const auto k = std::min(n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));
  // Rank on values rounded to ~12 significant digits so that ties which are
  // exact in theory (mirror-symmetric states) fall back to the index order.
  const double top = n > 0 ? *std::max_element(cent.begin(), cent.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  }) : 0.0;
  const double unit = std::abs(top) > 0.0 ? std::abs(top) * 1e-12 : 1.0;
  std::vector<double> key(n);
  for (std::size_t s = 0; s < n; ++s) key[s] = std::round(cent[s] / unit);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return invert ? key[a] < key[b] : key[a] > key[b];
  });
  order.resize(k);
  return order;
}

std::string centrality_to_csv(const Embedding& e, const Centrality& cent, const std::vector<std::size_t>& selected) {
  std::ostringstream out;
  out.precision(17);
  out << "state_index,x,y,cent,selected\n";
  std::vector<char> chosen(cent.values.size(), 0);
  for (auto s : selected) chosen.at(s) = 1;
  for (std::size_t s = 0; s < cent.values.size(); ++s) {
    out << s << ',';
    if (s < e.coords.size()) out << e.coords[s].x << ',' << e.coords[s].y;
    else out << ',';
    out << ',' << cent.values[s] << ',' << int{chosen[s]} << '\n';
  }
  return out.str();
}

}  // namespace spectral_reach
