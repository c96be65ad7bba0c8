#include "spectral_reach/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include <nlohmann/json.hpp>

#include "spectral_reach/error.hpp"
#include "spectral_reach/spectral.hpp"

namespace spectral_reach {

StateGraph::StateGraph(std::size_t n_states,
                       const std::vector<std::pair<std::size_t, std::size_t>>& transitions,
                       std::vector<Cell> coords)
    : adjacency_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_states), static_cast<Eigen::Index>(n_states))),
      degrees_(n_states, 0), neighbors_(n_states), coords_(std::move(coords)) {
  if (!coords_.empty() && coords_.size() != n_states) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate list does not match state count");
  }
  std::set<std::pair<std::size_t, std::size_t>> unique;
  for (auto [a, b] : transitions) {
    if (a >= n_states || b >= n_states) throw Error(ErrorCode::InvalidState, "transition outside state range");
    if (a == b) continue;
    unique.insert({std::min(a, b), std::max(a, b)});
  }
  edges_.assign(unique.begin(), unique.end());
  for (auto [a, b] : edges_) {
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    adjacency_(ia, ib) = adjacency_(ib, ia) = 1.0;
    ++degrees_[a];
    ++degrees_[b];
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
  volume_ = 2.0 * static_cast<double>(edges_.size());
}

Eigen::MatrixXd StateGraph::laplacian() const {
  Eigen::MatrixXd lap = -adjacency_;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    lap(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = degrees_[i];
  }
  return lap;
}

StateGraph build_graph(const MazeSpec& maze) {
  const StateIndex index(maze);
  std::vector<std::pair<std::size_t, std::size_t>> transitions;
  for (std::size_t s = 0; s < index.size(); ++s) {
    for (Action a : kActions) {
      const Cell next = step(maze, index.coord(s), a);
      transitions.emplace_back(s, *index.index_of(next));
    }
  }
  return StateGraph(index.size(), transitions, index.coords());
}

std::vector<std::vector<std::size_t>> connected_components(const StateGraph& g) {
  std::vector<std::vector<std::size_t>> components;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t root = 0; root < g.size(); ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> members;
    std::vector<std::size_t> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (std::size_t v : g.neighbors()[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

bool is_connected(const StateGraph& g) {
  return g.size() > 0 && connected_components(g).size() == 1;
}

void require_connected(const StateGraph& g, const std::string& context) {
  const auto parts = connected_components(g);
  if (parts.size() != 1) {
    throw Error(ErrorCode::GraphDisconnected,
                context + ": graph has " + std::to_string(parts.size()) + " connected components");
  }
}

std::vector<int> geodesic_distances(const StateGraph& g, std::size_t source) {
  std::vector<int> dist(g.size(), -1);
  if (source >= g.size()) throw Error(ErrorCode::InvalidState, "source out of range");
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : g.neighbors()[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

Eigen::MatrixXd geodesic_matrix(const StateGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto row = geodesic_distances(g, static_cast<std::size_t>(s));
    for (Eigen::Index t = 0; t < n; ++t) out(s, t) = row[static_cast<std::size_t>(t)];
  }
  return out;
}

PseudoInverse pseudo_inverse(const StateGraph& g, const SpectralBasis& basis) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (basis.eigenvectors.rows() != n) throw Error(ErrorCode::DimensionMismatch, "basis does not match graph");
  if (n < 2 || basis.eigenvalues(1) <= kConnectivityTolerance) {
    throw Error(ErrorCode::GraphDisconnected, "pseudo_inverse: lambda_2 is zero");
  }
  Eigen::MatrixXd lplus = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) {
    const auto v = basis.eigenvectors.col(i);
    lplus.noalias() += (v * v.transpose()) / basis.eigenvalues(i);
  }
  return {std::move(lplus), "eigenbasis:" + basis.sign_convention};
}

std::string graph_to_json(const StateGraph& g) {
  nlohmann::json doc;
  doc["n"] = g.size();
  auto edges = nlohmann::json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  doc["edges"] = std::move(edges);
  auto coords = nlohmann::json::array();
  for (const Cell& c : g.coords()) coords.push_back({c.x, c.y});
  doc["coords"] = std::move(coords);
  return doc.dump();
}

}  // namespace spectral_reach
