#include <benchmark/benchmark.h>

#include "spectral_reach/bundled_maps.hpp"
#include "spectral_reach/commute.hpp"
#include "spectral_reach/replearn.hpp"
#include "spectral_reach/shaping.hpp"

using namespace spectral_reach;

namespace {

MazeSpec fourroom() { return parse_maze(*bundled_map("fourroom")); }

void BM_EigSym(benchmark::State& state) {
  const auto l = build_graph(fourroom()).laplacian();
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(l));
}
BENCHMARK(BM_EigSym)->Unit(benchmark::kMillisecond);

void BM_CommuteSolve(benchmark::State& state) {
  const auto g = build_graph(fourroom());
  for (auto _ : state) benchmark::DoNotOptimize(commute(g, CommuteMethod::Solve));
}
BENCHMARK(BM_CommuteSolve)->Unit(benchmark::kMillisecond);

void BM_CommutePinv(benchmark::State& state) {
  const auto g = build_graph(fourroom());
  for (auto _ : state) benchmark::DoNotOptimize(commute(g, CommuteMethod::PseudoInverse));
}
BENCHMARK(BM_CommutePinv)->Unit(benchmark::kMillisecond);

void BM_QLearning(benchmark::State& state) {
  const auto maze = fourroom();
  const auto g = build_graph(maze);
  const auto e = ra_laprep(spectral_basis(g), 10);
  const auto spec = make_reward_spec(ShapingKind::RaLapRep, maze, 0, &e);
  QConfig cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(q_learning(maze, spec, cfg, seed++));
}
BENCHMARK(BM_QLearning)->Unit(benchmark::kMillisecond);

void BM_TrainGraphDrawing(benchmark::State& state) {
  CollectConfig cc;
  cc.seed = 1;
  const auto data = collect_dataset(fourroom(), cc);
  TrainConfig tc;
  tc.iterations = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(train_graph_drawing(data, 10, tc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainGraphDrawing)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
