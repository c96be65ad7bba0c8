#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "spectral_reach/error.hpp"
#include "spectral_reach/shaping.hpp"

using namespace spectral_reach;

namespace {

QConfig quick(std::size_t episodes) {
  QConfig cfg;
  cfg.episodes = episodes;
  return cfg;
}

}  // namespace

TEST(ShapingKind, RoundTrip) {
  for (auto k : {ShapingKind::RaLapRep, ShapingKind::LapRep, ShapingKind::L2, ShapingKind::None}) {
    EXPECT_EQ(parse_shaping_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_shaping_kind("dqn"), Error);
}

TEST(ShapedReward, Arithmetic) {
  RewardSpec spec;
  spec.kind = ShapingKind::RaLapRep;
  spec.goal = 0;
  spec.dist_to_goal = Eigen::Vector2d(0.0, 0.8);
  EXPECT_DOUBLE_EQ(shaped_reward(spec, 1), -0.9);
  EXPECT_DOUBLE_EQ(shaped_reward(spec, 0), 0.0);
  const auto none = make_reward_spec(ShapingKind::None, parse_maze(fixtures::kK2), 1);
  EXPECT_EQ(shaped_reward(none, 1), 0.0);
  EXPECT_EQ(shaped_reward(none, 0), -0.5);
}

TEST(ShapedReward, K2RaLapRep) {
  const auto maze = parse_maze(fixtures::kK2);
  const auto e = ra_laprep(spectral_basis(build_graph(maze)), 2);
  const auto spec = make_reward_spec(ShapingKind::RaLapRep, maze, 1, &e);
  EXPECT_NEAR(shaped_reward(spec, 0), -1.0, 1e-12);
  EXPECT_THROW(make_reward_spec(ShapingKind::LapRep, maze, 1), Error);
}

TEST(ShapedReward, L2UsesNormalizedPositions) {
  const auto maze = fixtures::bundled("fourroom");
  const StateIndex index(maze);
  const auto goal = *index.index_of({1, 1});
  const auto spec = make_reward_spec(ShapingKind::L2, maze, goal);
  const auto far = *index.index_of({11, 11});
  // Corners of the floor span map to opposite ends of the unit box.
  const double expected = std::hypot(10.0 / 12.0, 10.0 / 12.0);
  EXPECT_NEAR(spec.dist_to_goal[static_cast<Eigen::Index>(far)], expected, 1e-12);
}

TEST(ShapedReward, BoundedAndZeroOnlyAtGoal) {
  const auto maze = fixtures::bundled("fourroom");
  const auto basis = spectral_basis(build_graph(maze));
  const auto ra = ra_laprep(basis, 10);
  const auto lap = laprep(basis, 10);
  for (auto kind : {ShapingKind::RaLapRep, ShapingKind::LapRep, ShapingKind::L2, ShapingKind::None}) {
    const auto spec = make_reward_spec(kind, maze, 7, kind == ShapingKind::LapRep ? &lap : &ra);
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const double r = shaped_reward(spec, s);
      EXPECT_TRUE(std::isfinite(r));
      EXPECT_LE(r, 0.0);
      if (s != 7) EXPECT_LT(r, 0.0);
    }
    EXPECT_EQ(shaped_reward(spec, 7), 0.0);
  }
}

TEST(QConfig, Validation) {
  QConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.gamma = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.gamma = -0.1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = QConfig{};
  cfg.episodes = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(QLearning, GreedyPolicyMatchesValueIteration) {
  const auto maze = fixtures::bundled("tworoom");
  const StateIndex index(maze);
  const auto goal = *index.index_of({5, 1});
  const auto steps = oracle::value_iteration_steps(maze, {5, 1});
  std::size_t farthest = 0;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (steps[s] > steps[farthest]) farthest = s;
  }
  ASSERT_EQ(steps[farthest], 6);
  const auto spec = make_reward_spec(ShapingKind::None, maze, goal);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto run = q_learning(maze, spec, quick(500), seed);
    const auto rollout = greedy_rollout(maze, run, farthest, 100);
    ASSERT_TRUE(rollout.has_value()) << seed;
    EXPECT_EQ(*rollout, 6u) << seed;
  }
}

TEST(QLearning, RaLapRepLearnsNoSlowerOnTwoRoom) {
  const auto maze = fixtures::bundled("tworoom");
  const auto e = ra_laprep(spectral_basis(build_graph(maze)), 9);
  std::vector<std::uint64_t> seeds(10);
  for (std::uint64_t i = 0; i < 10; ++i) seeds[i] = i;
  const auto goals = default_goals(maze);
  ShapingEmbeddings emb;
  emb.ra_laprep = &e;
  const auto run = run_experiment(maze, {ShapingKind::RaLapRep, ShapingKind::None}, goals, seeds, quick(500), emb);
  EXPECT_LE(run.summary.at(ShapingKind::RaLapRep).episodes_to_90, run.summary.at(ShapingKind::None).episodes_to_90);
}

TEST(QLearning, DeterministicAndPairedAcrossKinds) {
  const auto maze = fixtures::bundled("tworoom");
  const auto none = make_reward_spec(ShapingKind::None, maze, 3);
  const auto a = q_learning(maze, none, quick(50), 4);
  const auto b = q_learning(maze, none, quick(50), 4);
  EXPECT_EQ(a.success, b.success);
  EXPECT_EQ(a.steps, b.steps);
  EXPECT_EQ(a.q, b.q);
  // Kinds sharing a seed share the start-state stream, so episode 1 starts alike.
  const auto l2 = make_reward_spec(ShapingKind::L2, maze, 3);
  const auto c = q_learning(maze, l2, quick(1), 4);
  const auto d = q_learning(maze, none, quick(1), 4);
  EXPECT_EQ(c.steps.size(), 1u);
  EXPECT_EQ(c.steps, d.steps);  // epsilon is 1 on the first episode, so actions ignore Q
}

TEST(QLearning, SuccessDoesNotDependOnShapingScale) {
  const auto maze = fixtures::bundled("tworoom");
  const auto e = ra_laprep(spectral_basis(build_graph(maze)), 9);
  auto spec = make_reward_spec(ShapingKind::RaLapRep, maze, 3, &e);
  auto scaled = spec;
  scaled.dist_to_goal *= 2.0;
  for (const auto& s : {spec, scaled}) {
    const auto run = q_learning(maze, s, quick(100), 1);
    for (std::size_t i = 0; i < run.success.size(); ++i) {
      // Success is judged by reaching the goal within the step cap.
      EXPECT_EQ(run.success[i] != 0, run.steps[i] <= 150 && run.success[i]);
      if (!run.success[i]) EXPECT_EQ(run.steps[i], 150u);
    }
  }
}

TEST(QLearning, UnreachableGoal) {
  const auto maze = parse_maze(fixtures::kSplit);
  try {
    q_learning(maze, make_reward_spec(ShapingKind::None, maze, 0), quick(5), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnreachableGoal);
  }
}

TEST(EpisodesToThreshold, Window) {
  std::vector<double> curve(30, 0.0);
  for (std::size_t i = 10; i < 30; ++i) curve[i] = 1.0;
  EXPECT_EQ(episodes_to_threshold(curve), 19.0);  // episodes 10..19 (1-based 11..20) first 9 ones
  EXPECT_EQ(episodes_to_threshold(std::vector<double>(5, 0.0)), 6.0);
}

TEST(RunExperiment, SingleRunAggregate) {
  const auto maze = fixtures::bundled("tworoom");
  const auto run = run_experiment(maze, {ShapingKind::None}, {3}, {7}, quick(40), {});
  ASSERT_EQ(run.runs.size(), 1u);
  const auto& sum = run.summary.at(ShapingKind::None);
  EXPECT_DOUBLE_EQ(sum.auc, run.runs[0].auc());
  for (std::size_t i = 0; i < 40; ++i) EXPECT_EQ(sum.mean_curve[i], run.runs[0].success[i]);
  EXPECT_EQ(sum.auc_stderr, 0.0);
  const auto again = run_experiment(maze, {ShapingKind::None}, {3}, {7}, quick(40), {});
  EXPECT_EQ(again.summary.at(ShapingKind::None).mean_curve, sum.mean_curve);
  EXPECT_NE(curves_to_csv(run).find("episode,kind,goal,seed,success,steps"), std::string::npos);
  EXPECT_NE(summary_to_json(run).find("episodes_to_90pct"), std::string::npos);
}

TEST(RunExperiment, MissingEmbeddingPropagates) {
  const auto maze = fixtures::bundled("tworoom");
  EXPECT_THROW(run_experiment(maze, {ShapingKind::RaLapRep}, {3}, {0}, quick(5), {}), Error);
}

TEST(DefaultGoals, UsesGoalTags) {
  const auto maze = fixtures::bundled("fourroom");
  const StateIndex index(maze);
  const auto goals = default_goals(maze);
  ASSERT_EQ(goals.size(), 4u);
  EXPECT_EQ(index.coord(goals[0]), (Cell{1, 1}));
  EXPECT_EQ(default_goals(parse_maze(fixtures::kP3), 2).size(), 2u);
}

TEST(DimensionSweep, SmallDRunsAndEmptyListRejected) {
  const auto maze = fixtures::bundled("tworoom");
  const auto sweep = dimension_sweep(maze, {2, 9}, {3}, {0, 1}, quick(60));
  ASSERT_EQ(sweep.size(), 2u);
  EXPECT_EQ(sweep[0].d, 2);
  EXPECT_EQ(sweep[0].run_auc.size(), 2u);
  EXPECT_THROW(dimension_sweep(maze, {}, {3}, {0}, quick(5)), Error);
  EXPECT_THROW(dimension_sweep(maze, {1}, {3}, {0}, quick(5)), Error);
}
