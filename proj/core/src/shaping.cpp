#include "spectral_reach/shaping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spectral_reach/error.hpp"
#include "spectral_reach/graph.hpp"
#include "spectral_reach/parallel.hpp"
#include "spectral_reach/rng.hpp"
#include "spectral_reach/stats.hpp"

namespace spectral_reach {

namespace {

constexpr std::uint64_t kStartStream = 0;
constexpr std::uint64_t kExploreStream = 1;
constexpr std::uint64_t kTieStream = 2;

std::vector<std::array<std::size_t, 4>> transition_table(const MazeSpec& maze, const StateIndex& index) {
  std::vector<std::array<std::size_t, 4>> next(index.size());
  for (std::size_t s = 0; s < index.size(); ++s) {
    for (std::size_t a = 0; a < kActions.size(); ++a) {
      next[s][a] = *index.index_of(step(maze, index.coord(s), kActions[a]));
    }
  }
  return next;
}

}  // namespace

std::string to_string(ShapingKind kind) {
  switch (kind) {
    case ShapingKind::RaLapRep: return "ra_laprep";
    case ShapingKind::LapRep: return "laprep";
    case ShapingKind::L2: return "l2";
    case ShapingKind::None: return "none";
  }
  return "unknown";
}

ShapingKind parse_shaping_kind(const std::string& name) {
  for (auto kind : {ShapingKind::RaLapRep, ShapingKind::LapRep, ShapingKind::L2, ShapingKind::None}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown shaping kind '" + name + "'");
}

RewardSpec make_reward_spec(ShapingKind kind, const MazeSpec& maze, std::size_t goal, const Embedding* embedding) {
  const StateIndex index(maze);
  if (goal >= index.size()) throw Error(ErrorCode::InvalidState, "goal index out of range");
  RewardSpec spec;
  spec.kind = kind;
  spec.goal = goal;
  switch (kind) {
    case ShapingKind::RaLapRep:
    case ShapingKind::LapRep:
      if (embedding == nullptr) throw Error(ErrorCode::MissingEmbedding, to_string(kind) + " shaping");
      if (embedding->states() != index.size()) {
        throw Error(ErrorCode::DimensionMismatch, "embedding does not match the maze");
      }
      spec.dist_to_goal = distances_to(*embedding, goal);
      break;
    case ShapingKind::L2: {
      spec.dist_to_goal.resize(static_cast<Eigen::Index>(index.size()));
      const double sx = std::max(1, maze.width() - 1);
      const double sy = std::max(1, maze.height() - 1);
      const Cell g = index.coord(goal);
      for (std::size_t s = 0; s < index.size(); ++s) {
        const Cell c = index.coord(s);
        // Both points are shifted by -0.5 on each axis; the offset cancels in the difference.
        spec.dist_to_goal[static_cast<Eigen::Index>(s)] = std::hypot((c.x - g.x) / sx, (c.y - g.y) / sy);
      }
      break;
    }
    case ShapingKind::None:
      break;
  }
  return spec;
}

double shaped_reward(const RewardSpec& spec, std::size_t s_next) {
  const double r_env = s_next == spec.goal ? 0.0 : -1.0;
  double r_dist = 0.0;
  if (spec.kind != ShapingKind::None) {
    if (s_next >= static_cast<std::size_t>(spec.dist_to_goal.size())) {
      throw Error(ErrorCode::InvalidState, "state index out of range");
    }
    r_dist = -spec.dist_to_goal[static_cast<Eigen::Index>(s_next)];
  }
  return spec.w_env * r_env + spec.w_dist * r_dist;
}

void QConfig::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw Error(ErrorCode::InvalidConfig, "gamma must lie in [0, 1)");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, 1]");
  if (episodes < 1 || max_steps < 1) throw Error(ErrorCode::InvalidConfig, "episodes and max_steps must be positive");
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0 && epsilon_end >= 0.0 && epsilon_end <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "epsilon must lie in [0, 1]");
  }
  if (!(epsilon_decay_fraction >= 0.0 && epsilon_decay_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "epsilon_decay_fraction must lie in [0, 1]");
  }
}

double QRun::auc() const {
  if (success.empty()) return 0.0;
  double sum = 0;
  for (auto v : success) sum += v;
  return sum / static_cast<double>(success.size());
}

QRun q_learning(const MazeSpec& maze, const RewardSpec& spec, const QConfig& config, std::uint64_t seed) {
  config.validate();
  const StateIndex index(maze);
  const std::size_t n = index.size();
  if (spec.goal >= n) throw Error(ErrorCode::InvalidState, "goal index out of range");
  if (n < 2) throw Error(ErrorCode::UnreachableGoal, "maze has no non-goal state");
  const auto reach = geodesic_distances(build_graph(maze), spec.goal);
  for (std::size_t s = 0; s < n; ++s) {
    if (reach[s] < 0) {
      const Cell c = index.coord(s);
      throw Error(ErrorCode::UnreachableGoal,
                  "goal unreachable from cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ")");
    }
  }
  const auto next = transition_table(maze, index);
  std::vector<double> reward(n);
  for (std::size_t s = 0; s < n; ++s) reward[s] = shaped_reward(spec, s);

  QRun run;
  run.kind = spec.kind;
  run.goal = spec.goal;
  run.seed = seed;
  run.q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), 4);
  run.success.reserve(config.episodes);
  run.steps.reserve(config.episodes);

  Rng starts(seed, kStartStream);
  Rng explore(seed, kExploreStream);
  Rng ties(seed, kTieStream);
  const double decay_episodes = config.epsilon_decay_fraction * static_cast<double>(config.episodes);

  for (std::size_t episode = 0; episode < config.episodes; ++episode) {
    const double frac = decay_episodes > 0 ? std::min(1.0, static_cast<double>(episode) / decay_episodes) : 1.0;
    const double epsilon = config.epsilon_start + frac * (config.epsilon_end - config.epsilon_start);

    std::size_t s = starts.below(n - 1);
    if (s >= spec.goal) ++s;
    bool reached = false;
    std::uint32_t steps = 0;
    while (steps < config.max_steps) {
      // Both draws happen every step so the noise sequence does not depend on the reward.
      const double u = explore.uniform();
      const auto random_action = static_cast<std::size_t>(explore.below(4));
      std::size_t a = random_action;
      if (u >= epsilon) {
        const auto row = run.q.row(static_cast<Eigen::Index>(s));
        const double best = row.maxCoeff();
        std::array<std::size_t, 4> candidates{};
        std::size_t count = 0;
        for (std::size_t k = 0; k < 4; ++k) {
          if (row[static_cast<Eigen::Index>(k)] == best) candidates[count++] = k;
        }
        a = count == 1 ? candidates[0] : candidates[ties.below(count)];
      }
      const std::size_t s2 = next[s][a];
      ++steps;
      const bool terminal = s2 == spec.goal;
      const double target =
          reward[s2] + (terminal ? 0.0 : config.gamma * run.q.row(static_cast<Eigen::Index>(s2)).maxCoeff());
      double& q = run.q(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(a));
      q += config.alpha * (target - q);
      s = s2;
      if (terminal) {
        reached = true;
        break;
      }
    }
    run.success.push_back(reached ? 1 : 0);
    run.steps.push_back(steps);
  }
  return run;
}

std::optional<std::size_t> greedy_rollout(const MazeSpec& maze, const QRun& run, std::size_t start,
                                          std::size_t max_steps) {
  const StateIndex index(maze);
  const auto next = transition_table(maze, index);
  std::size_t s = start;
  for (std::size_t t = 0; t <= max_steps; ++t) {
    if (s == run.goal) return t;
    Eigen::Index a = 0;
    run.q.row(static_cast<Eigen::Index>(s)).maxCoeff(&a);
    s = next[s][static_cast<std::size_t>(a)];
  }
  return std::nullopt;
}

double episodes_to_threshold(const std::vector<double>& curve, double threshold, std::size_t window) {
  double sum = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    sum += curve[i];
    if (i >= window) sum -= curve[i - window];
    if (i + 1 >= window && sum / static_cast<double>(window) >= threshold) return static_cast<double>(i + 1);
  }
  return static_cast<double>(curve.size() + 1);
}

ShapingRun run_experiment(const MazeSpec& maze, const std::vector<ShapingKind>& kinds,
                          const std::vector<std::size_t>& goals, const std::vector<std::uint64_t>& seeds,
                          const QConfig& config, const ShapingEmbeddings& embeddings) {
  config.validate();
  if (kinds.empty() || goals.empty() || seeds.empty()) {
    throw Error(ErrorCode::InvalidConfig, "experiment needs at least one kind, goal and seed");
  }
  ShapingRun out;
  out.kinds = kinds;
  out.goals = goals;
  out.seeds = seeds;
  out.config = config;
  if (embeddings.ra_laprep) out.d = embeddings.ra_laprep->d;
  else if (embeddings.laprep) out.d = embeddings.laprep->d;

  std::vector<RewardSpec> specs;
  for (auto kind : kinds) {
    const Embedding* e = kind == ShapingKind::RaLapRep ? embeddings.ra_laprep
                         : kind == ShapingKind::LapRep ? embeddings.laprep
                                                       : nullptr;
    for (auto goal : goals) specs.push_back(make_reward_spec(kind, maze, goal, e));
  }
  out.runs.resize(specs.size() * seeds.size());
  parallel_for(out.runs.size(), [&](std::size_t k) {
    out.runs[k] = q_learning(maze, specs[k / seeds.size()], config, seeds[k % seeds.size()]);
  });

  const std::size_t per_kind = goals.size() * seeds.size();
  for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
    KindSummary summary;
    summary.mean_curve.assign(config.episodes, 0.0);
    for (std::size_t r = ki * per_kind; r < (ki + 1) * per_kind; ++r) {
      const auto& run = out.runs[r];
      for (std::size_t e = 0; e < config.episodes; ++e) summary.mean_curve[e] += run.success[e];
      summary.run_auc.push_back(run.auc());
    }
    for (double& v : summary.mean_curve) v /= static_cast<double>(per_kind);
    summary.auc = mean(summary.run_auc);
    summary.auc_stderr = standard_error(summary.run_auc);
    summary.episodes_to_90 = episodes_to_threshold(summary.mean_curve);
    out.summary[kinds[ki]] = std::move(summary);
  }
  return out;
}

std::vector<std::size_t> default_goals(const MazeSpec& maze, std::size_t fallback) {
  const StateIndex index(maze);
  std::vector<std::size_t> goals;
  for (std::size_t s = 0; s < index.size(); ++s) {
    if (maze.at(index.coord(s)) == CellKind::Goal) goals.push_back(s);
  }
  if (goals.empty()) {
    const std::size_t k = std::min(std::max<std::size_t>(fallback, 1), index.size());
    for (std::size_t i = 0; i < k; ++i) goals.push_back(i * index.size() / k);
  }
  return goals;
}

std::vector<SweepPoint> dimension_sweep(const MazeSpec& maze, const std::vector<int>& d_values,
                                        const std::vector<std::size_t>& goals,
                                        const std::vector<std::uint64_t>& seeds, const QConfig& config) {
  if (d_values.empty()) throw Error(ErrorCode::InvalidConfig, "dimension sweep needs at least one d");
  const auto basis = spectral_basis(build_graph(maze));
  std::vector<SweepPoint> points;
  for (int d : d_values) {
    const auto e = ra_laprep(basis, d);
    const auto run = run_experiment(maze, {ShapingKind::RaLapRep}, goals, seeds, config, {&e, nullptr});
    const auto& s = run.summary.at(ShapingKind::RaLapRep);
    points.push_back({d, s.auc, s.auc_stderr, s.run_auc});
  }
  return points;
}

std::string curves_to_csv(const ShapingRun& run) {
  std::ostringstream out;
  out << "episode,kind,goal,seed,success,steps\n";
  for (const auto& r : run.runs) {
    for (std::size_t e = 0; e < r.success.size(); ++e) {
      out << e << ',' << to_string(r.kind) << ',' << r.goal << ',' << r.seed << ',' << int{r.success[e]} << ','
          << r.steps[e] << '\n';
    }
  }
  return out.str();
}

std::string summary_to_json(const ShapingRun& run) {
  nlohmann::json doc = nlohmann::json::object();
  for (auto kind : run.kinds) {
    const auto& s = run.summary.at(kind);
    doc[to_string(kind)] = {{"auc", s.auc}, {"episodes_to_90pct", s.episodes_to_90}, {"stderr", s.auc_stderr}};
  }
  return doc.dump(2);
}

}  // namespace spectral_reach
