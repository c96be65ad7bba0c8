#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral_reach/envgrid.hpp"
#include "spectral_reach/graph.hpp"
#include "spectral_reach/spectral.hpp"

namespace spectral_reach {

class Rng;

struct CollectConfig {
  std::size_t episodes = 2000;
  std::size_t episode_len = 50;
  /// Coverage temperature: start states are drawn with weight exp(tau * [cell is 'B']).
  double tau = 0.0;
  std::uint64_t seed = 0;
};

/// Uniform-random-policy trajectories. Each episode holds episode_len + 1
/// state indices; wall bumps appear as repeated states.
struct TransitionDataset {
  std::size_t n_states = 0;
  std::vector<Cell> coords;
  std::vector<std::vector<std::size_t>> episodes;
  std::size_t total_steps = 0;
  CollectConfig config;
  std::vector<std::uint64_t> visits;
};

/// Episode k draws from substream (seed, k). Throws NoBiasCells when tau > 0
/// and the maze carries no 'B' cell, GraphDisconnected when the maze is.
TransitionDataset collect_dataset(const MazeSpec& maze, const CollectConfig& config);

/// Graph over all maze states whose edges are the observed transitions.
StateGraph induced_graph(const TransitionDataset& data);

struct TrainConfig {
  std::size_t iterations = 100000;
  std::size_t batch = 1024;
  double step_size = 3e-2;
  /// Step size decays geometrically to step_size * final_step_fraction.
  double final_step_fraction = 0.01;
  /// Attraction pairs are (s_t, s_{t+k}) with k ~ Geometric(1 - discount).
  double discount = 0.9;
  double penalty = 5.0;
  std::uint64_t seed = 0;
  std::size_t log_every = 100;
};

struct TrainLogEntry {
  std::size_t iteration = 0;
  double objective = 0;
  double penalty = 0;
};

/// Tabular eigenvector approximations f_1..f_d, columns scaled to unit norm.
struct LearnedRep {
  Eigen::MatrixXd f;  // |S| x d
  TrainConfig config;
  int d = 0;
  double final_objective = 0;
  std::vector<TrainLogEntry> log;
};

/// Offset k >= 1 with P(k) = (1 - discount) * discount^(k - 1).
std::uint64_t sample_offset(Rng& rng, double discount);

/// Minimizes sum_i c_i E_pairs[(f_i(s) - f_i(s'))^2]
///   + b * sum_{i<=j} min(c_i, c_j) (E_s[f_i f_j] - delta_ij)^2,  c_i = d - i + 1,
/// with Adam on independent minibatches. Throws GraphDisconnected when the
/// induced graph is disconnected and DivergedObjective when the smoothed
/// objective exceeds ten times its initial value.
LearnedRep train_graph_drawing(const TransitionDataset& data, int d, const TrainConfig& config);

/// lambda~_i = |E| * mean over non-self consecutive pairs of (f_i(s) - f_i(s'))^2,
/// |E| the number of distinct observed edges. Returns indices 2..d.
/// Throws EmptyDataset when no non-self transition exists.
Eigen::VectorXd estimate_eigenvalues(const LearnedRep& rep, const TransitionDataset& data);

/// Row s = (f_2(s)/sqrt(l~_2), ..., f_d(s)/sqrt(l~_d)). Throws DegenerateEigenvalue
/// when some l~_i <= 1e-8.
Embedding learned_ra_laprep(const LearnedRep& rep, const Eigen::VectorXd& eigenvalues);

struct RepQuality {
  /// |cosine| per stored column; NaN where the true eigenvalue is degenerate.
  std::vector<double> cosines;
  std::vector<double> eigenvalue_relative_errors;
  /// Per goal: learned distance-to-goal vs geodesic distance-to-goal.
  std::vector<double> spearman_geodesic;
  /// Per goal: learned distance-to-goal vs truth distance-to-goal.
  std::vector<double> spearman_truth;
};

/// Relative eigenvalue gap below which a dimension counts as degenerate.
inline constexpr double kDegenerateGap = 1e-6;

/// Compares a learned embedding with the ground truth. `truth` may have a
/// larger d than `learned`; the extra eigenvalues only serve degeneracy checks.
/// Throws DimensionMismatch.
RepQuality rep_quality(const Embedding& learned, const Embedding& truth, const Eigen::MatrixXd& geodesics,
                       const std::vector<std::size_t>& goals);

/// CSV: iteration,objective,penalty.
std::string train_log_to_csv(const std::vector<TrainLogEntry>& log);

/// JSON {n_states, config, episodes:[[...]...]}.
std::string dataset_to_json(const TransitionDataset& data);

}  // namespace spectral_reach
