#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral_reach/envgrid.hpp"
#include "spectral_reach/spectral.hpp"

namespace spectral_reach {

enum class ShapingKind { RaLapRep, LapRep, L2, None };

std::string to_string(ShapingKind kind);
ShapingKind parse_shaping_kind(const std::string& name);

/// Shaped reward r = w_env * r_env + w_dist * r_dist with r_env = -[s' != goal]
/// and r_dist = -dist(s', goal).
struct RewardSpec {
  ShapingKind kind = ShapingKind::None;
  std::size_t goal = 0;
  double w_env = 0.5;
  double w_dist = 0.5;
  Eigen::VectorXd dist_to_goal;  // per state; empty for kind None
};

/// Embedding kinds need `embedding` (MissingEmbedding otherwise). L2 uses grid
/// positions scaled to [-0.5, 0.5] on each axis of the maze.
RewardSpec make_reward_spec(ShapingKind kind, const MazeSpec& maze, std::size_t goal,
                            const Embedding* embedding = nullptr);

double shaped_reward(const RewardSpec& spec, std::size_t s_next);

struct QConfig {
  std::size_t episodes = 500;
  std::size_t max_steps = 150;
  double alpha = 0.1;
  double gamma = 0.99;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  /// Fraction of episodes over which epsilon decays linearly.
  double epsilon_decay_fraction = 0.3;

  /// Throws InvalidConfig.
  void validate() const;
};

struct QRun {
  ShapingKind kind = ShapingKind::None;
  std::size_t goal = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> success;
  std::vector<std::uint32_t> steps;
  Eigen::MatrixXd q;  // |S| x 4

  /// Mean success over all episodes.
  double auc() const;
};

/// Epsilon-greedy tabular Q-learning. Start states, exploration draws and
/// greedy tie-breaks come from separate substreams of `seed`, so runs that
/// share a seed share their noise across reward kinds. An episode succeeds
/// when the agent enters the goal; that state is terminal.
/// Throws UnreachableGoal when some state cannot reach the goal.
QRun q_learning(const MazeSpec& maze, const RewardSpec& spec, const QConfig& config, std::uint64_t seed);

/// Number of greedy steps from `start` to the goal, or nullopt when the greedy
/// policy does not reach it within max_steps. Ties go to the lowest action.
std::optional<std::size_t> greedy_rollout(const MazeSpec& maze, const QRun& run, std::size_t start,
                                          std::size_t max_steps);

/// First episode (1-based) at which the trailing 10-episode success mean is
/// at least `threshold`; the curve length plus one when never reached.
double episodes_to_threshold(const std::vector<double>& curve, double threshold = 0.9, std::size_t window = 10);

struct KindSummary {
  std::vector<double> mean_curve;
  double auc = 0;
  double auc_stderr = 0;
  double episodes_to_90 = 0;
  /// Per-run AUC in (goal, seed) order.
  std::vector<double> run_auc;
};

struct ShapingRun {
  std::vector<ShapingKind> kinds;
  std::vector<std::size_t> goals;
  std::vector<std::uint64_t> seeds;
  QConfig config;
  int d = 0;
  std::vector<QRun> runs;  // kind-major, then goal, then seed
  std::map<ShapingKind, KindSummary> summary;
};

/// Embeddings available to the experiment; either may be null when its kind is unused.
struct ShapingEmbeddings {
  const Embedding* ra_laprep = nullptr;
  const Embedding* laprep = nullptr;
};

/// Full factorial kinds x goals x seeds, run in parallel and aggregated in declaration order.
ShapingRun run_experiment(const MazeSpec& maze, const std::vector<ShapingKind>& kinds,
                          const std::vector<std::size_t>& goals, const std::vector<std::uint64_t>& seeds,
                          const QConfig& config, const ShapingEmbeddings& embeddings);

/// Goal states: the 'G' cells when present, otherwise `fallback` evenly spaced states.
std::vector<std::size_t> default_goals(const MazeSpec& maze, std::size_t fallback = 4);

struct SweepPoint {
  int d = 0;
  double auc = 0;
  double auc_stderr = 0;
  std::vector<double> run_auc;
};

/// RA-LapRep shaping for each d, from the ground-truth basis. Throws InvalidConfig on an empty list.
std::vector<SweepPoint> dimension_sweep(const MazeSpec& maze, const std::vector<int>& d_values,
                                        const std::vector<std::size_t>& goals,
                                        const std::vector<std::uint64_t>& seeds, const QConfig& config);

/// CSV: episode,kind,goal,seed,success,steps.
std::string curves_to_csv(const ShapingRun& run);

/// JSON {kind: {auc, episodes_to_90pct, stderr}}.
std::string summary_to_json(const ShapingRun& run);

}  // namespace spectral_reach
