#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spectral_reach/envgrid.hpp"

namespace spectral_reach {

struct SpectralBasis;

/// Undirected simple graph over dense state indices. Self-transitions are
/// never stored: the Laplacian D - A cancels them anyway, and the random-walk
/// identities used elsewhere are stated for the simple-graph walk D^-1 A.
class StateGraph {
public:
  /// Builds from an arbitrary transition log; self-transitions and duplicates are ignored.
  StateGraph(std::size_t n_states, const std::vector<std::pair<std::size_t, std::size_t>>& transitions,
             std::vector<Cell> coords = {});

  std::size_t size() const noexcept { return degrees_.size(); }
  const Eigen::MatrixXd& adjacency() const noexcept { return adjacency_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const std::vector<std::vector<std::size_t>>& neighbors() const noexcept { return neighbors_; }
  /// Sorted (i < j) edge list.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// V_G: sum of degrees.
  double volume() const noexcept { return volume_; }
  /// Grid coordinates of each state (empty for abstract graphs).
  const std::vector<Cell>& coords() const noexcept { return coords_; }

  /// L = D - A.
  Eigen::MatrixXd laplacian() const;

private:
  Eigen::MatrixXd adjacency_;
  std::vector<int> degrees_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<Cell> coords_;
  double volume_ = 0;
};

/// Nodes are floor cells; {s, s'} is an edge when some action moves s to s' != s.
StateGraph build_graph(const MazeSpec& maze);

/// Components as sorted index sets, ordered by smallest member.
std::vector<std::vector<std::size_t>> connected_components(const StateGraph& g);

bool is_connected(const StateGraph& g);

/// Throws GraphDisconnected (naming `context`) unless g is connected.
void require_connected(const StateGraph& g, const std::string& context);

/// Breadth-first hop distances from `source`; -1 for unreachable states.
std::vector<int> geodesic_distances(const StateGraph& g, std::size_t source);

/// All-pairs hop distances (row = source).
Eigen::MatrixXd geodesic_matrix(const StateGraph& g);

/// Moore-Penrose inverse of L with the basis it was assembled from recorded.
struct PseudoInverse {
  Eigen::MatrixXd matrix;
  std::string provenance;
};

/// L+ = sum_{i>=2} v_i v_i^T / lambda_i. Throws GraphDisconnected when lambda_2 is ~0.
PseudoInverse pseudo_inverse(const StateGraph& g, const SpectralBasis& basis);

/// JSON {n, edges:[[i,j]...], coords:[[x,y]...]}.
std::string graph_to_json(const StateGraph& g);

}  // namespace spectral_reach
