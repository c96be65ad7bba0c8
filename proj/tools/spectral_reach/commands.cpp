#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "heatmap.hpp"
#include "spectral_reach/bottleneck.hpp"
#include "spectral_reach/commute.hpp"
#include "spectral_reach/error.hpp"
#include "spectral_reach/graph.hpp"
#include "spectral_reach/replearn.hpp"
#include "spectral_reach/rng.hpp"
#include "spectral_reach/shaping.hpp"
#include "spectral_reach/spectral.hpp"
#include "spectral_reach/stats.hpp"
#include "verify.hpp"

namespace spectral_reach::cli {

namespace {

std::uint64_t require_seed(RunContext& ctx, const Options& o) {
  if (!o.seed) throw Error(ErrorCode::InvalidConfig, "--seed is required for this command");
  ctx.add_seed(*o.seed);
  ctx.config()["seed"] = *o.seed;
  return *o.seed;
}

EmbeddingKind parse_kind(const std::string& kind) {
  if (kind == "ra") return EmbeddingKind::RaLapRep;
  if (kind == "lap") return EmbeddingKind::LapRep;
  throw Error(ErrorCode::InvalidConfig, "--kind must be 'lap' or 'ra', got '" + kind + "'");
}

Embedding ground_truth(const StateGraph& g, EmbeddingKind kind, int d) {
  const auto basis = spectral_basis(g);
  auto e = kind == EmbeddingKind::RaLapRep ? ra_laprep(basis, d) : laprep(basis, d);
  e.coords = g.coords();
  return e;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, sep);) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

}  // namespace

int cmd_env(RunContext& ctx, const Options& o) {
  const auto map = ctx.load_map(o.map, o.resolution);
  const auto g = build_graph(map.maze);
  const auto components = connected_components(g).size();
  ctx.write_output("graph.json", graph_to_json(g));
  std::cout << "states=" << g.size() << " edges=" << g.edge_count() << " volume=" << g.volume()
            << " components=" << components << "\n";
  return 0;
}

int cmd_embed(RunContext& ctx, const Options& o) {
  const auto kind = parse_kind(o.kind);
  const auto map = ctx.load_map(o.map, o.resolution);
  const auto g = build_graph(map.maze);
  const int d = o.d > 0 ? o.d : static_cast<int>(g.size());
  ctx.config()["kind"] = o.kind;
  ctx.config()["d"] = d;
  if (kind == EmbeddingKind::RaLapRep) require_connected(g, "ra embedding");
  const auto basis = spectral_basis(g);
  auto e = kind == EmbeddingKind::RaLapRep ? ra_laprep(basis, d) : laprep(basis, d);
  e.coords = g.coords();
  ctx.write_output("embedding.csv", embedding_to_csv(e));
  ctx.write_output("spectrum.json", basis_to_json(basis));
  std::cout << "states=" << g.size() << " d=" << d << " columns=" << e.vectors.cols() << "\n";
  return 0;
}

int cmd_heatmap(RunContext& ctx, const Options& o) {
  if (o.embedding.empty()) throw Error(ErrorCode::InvalidConfig, "--embedding is required");
  const auto e = embedding_from_csv(ctx.read_input(o.embedding));
  const Cell goal = parse_cell(o.goal);
  ctx.config()["goal"] = o.goal;
  ctx.config()["normalize"] = o.normalize;
  const auto grid = distance_grid(e, goal, o.normalize);
  ctx.write_output("distance.csv", grid_to_csv(grid));
  ctx.write_output("heatmap.ppm", grid_to_ppm(grid));
  return 0;
}

int cmd_verify(RunContext& ctx, const Options& o) {
  ctx.config()["suite"] = o.suite;
  const auto results = run_suite(o.suite);
  const auto report = results_to_jsonl(results);
  ctx.write_output("verify.jsonl", report);
  std::cout << report;
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << "{\"checks\":" << results.size() << ",\"failed\":" << failed << "}\n";
  return failed == 0 ? 0 : 3;
}

int cmd_learn(RunContext& ctx, const Options& o) {
  const auto seed = require_seed(ctx, o);
  const auto map = ctx.load_map(o.map, o.resolution);
  CollectConfig collect;
  collect.episodes = o.episodes > 0 ? o.episodes : 2000;
  collect.episode_len = o.episode_len;
  collect.tau = o.tau;
  collect.seed = seed;
  TrainConfig train;
  train.seed = derive_seed(seed, 1);
  if (o.iterations > 0) train.iterations = o.iterations;
  const int d = o.d > 0 ? o.d : std::min(10, static_cast<int>(StateIndex(map.maze).size()));
  ctx.config()["d"] = d;
  ctx.config()["collect"] = {{"episodes", collect.episodes}, {"episode_len", collect.episode_len}, {"tau", collect.tau}};
  ctx.config()["train"] = {{"iterations", train.iterations}, {"batch", train.batch},
                           {"step_size", train.step_size}, {"final_step_fraction", train.final_step_fraction},
                           {"discount", train.discount}, {"penalty", train.penalty}};

  const auto data = collect_dataset(map.maze, collect);
  const auto induced = induced_graph(data);
  const auto components = connected_components(induced).size();
  if (components > 1) {
    throw Error(ErrorCode::GraphDisconnected, "transitions collected at tau=" + std::to_string(o.tau) +
                                                  " leave the state graph in " + std::to_string(components) +
                                                  " components");
  }
  const auto rep = train_graph_drawing(data, d, train);
  const auto eigenvalues = estimate_eigenvalues(rep, data);
  auto learned = learned_ra_laprep(rep, eigenvalues);
  learned.coords = data.coords;
  ctx.write_output("embedding.csv", embedding_to_csv(learned));
  ctx.write_output("train_log.csv", train_log_to_csv(rep.log));

  const auto g = build_graph(map.maze);
  const auto truth = ground_truth(g, EmbeddingKind::RaLapRep, std::min<int>(d + 1, static_cast<int>(g.size())));
  const auto q = rep_quality(learned, truth, geodesic_matrix(g), default_goals(map.maze));
  nlohmann::json report{{"eigenvalues", std::vector<double>(eigenvalues.data(), eigenvalues.data() + eigenvalues.size())},
                        {"eigenvalue_relative_errors", q.eigenvalue_relative_errors},
                        {"spearman_geodesic", q.spearman_geodesic},
                        {"spearman_truth", q.spearman_truth},
                        {"final_objective", rep.final_objective}};
  nlohmann::json cosines = nlohmann::json::array();
  for (double c : q.cosines) cosines.push_back(std::isnan(c) ? nlohmann::json(nullptr) : nlohmann::json(c));
  report["cosines"] = cosines;
  ctx.write_output("quality.json", report.dump(2) + "\n");
  std::cout << report.dump() << "\n";
  return 0;
}

int cmd_shape(RunContext& ctx, const Options& o) {
  const auto base = require_seed(ctx, o);
  const auto map = ctx.load_map(o.map, o.resolution);
  const auto g = build_graph(map.maze);
  const int d = o.d > 0 ? o.d : std::min(10, static_cast<int>(g.size()));
  std::vector<ShapingKind> kinds;
  for (const auto& name : split(o.kind.empty() ? "ra_laprep,laprep,l2,none" : o.kind, ',')) {
    kinds.push_back(parse_shaping_kind(name));
  }
  std::vector<std::size_t> goals;
  if (!o.goal.empty()) {
    for (const auto& cell : split(o.goal, ';')) goals.push_back(state_of(map.maze, parse_cell(cell)));
  } else {
    goals = default_goals(map.maze);
  }
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < o.seeds; ++k) seeds.push_back(base + k);
  QConfig config;
  if (o.episodes > 0) config.episodes = o.episodes;

  require_connected(g, "shape");
  auto ra = ground_truth(g, EmbeddingKind::RaLapRep, d);
  const auto lap = ground_truth(g, EmbeddingKind::LapRep, d);
  if (!o.embedding.empty()) {
    ra = embedding_from_csv(ctx.read_input(o.embedding));
    ctx.config()["embedding"] = o.embedding;
  }
  ctx.config()["d"] = d;
  ctx.config()["kinds"] = split(o.kind.empty() ? "ra_laprep,laprep,l2,none" : o.kind, ',');
  ctx.config()["goals"] = goals;
  ctx.config()["seeds"] = seeds;
  ctx.config()["q_learning"] = {{"episodes", config.episodes}, {"max_steps", config.max_steps},
                                {"alpha", config.alpha}, {"gamma", config.gamma},
                                {"epsilon_start", config.epsilon_start}, {"epsilon_end", config.epsilon_end},
                                {"epsilon_decay_fraction", config.epsilon_decay_fraction},
                                {"w_env", 0.5}, {"w_dist", 0.5}};

  const auto run = run_experiment(map.maze, kinds, goals, seeds, config, {&ra, &lap});
  ctx.write_output("curves.csv", curves_to_csv(run));
  ctx.write_output("summary.json", summary_to_json(run) + "\n");
  std::ostringstream csv;
  csv.precision(17);
  csv << "kind,auc,stderr,episodes_to_90pct\n";
  for (auto kind : kinds) {
    const auto& s = run.summary.at(kind);
    csv << to_string(kind) << ',' << s.auc << ',' << s.auc_stderr << ',' << s.episodes_to_90 << '\n';
  }
  ctx.write_output("summary.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_bottleneck(RunContext& ctx, const Options& o) {
  const auto map = ctx.load_map(o.map, o.resolution);
  const auto g = build_graph(map.maze);
  Embedding e;
  if (!o.embedding.empty()) {
    e = embedding_from_csv(ctx.read_input(o.embedding));
    ctx.config()["embedding"] = o.embedding;
  } else {
    const auto kind = parse_kind(o.kind.empty() ? "ra" : o.kind);
    const int d = o.d > 0 ? o.d : static_cast<int>(g.size());
    if (kind == EmbeddingKind::RaLapRep) require_connected(g, "bottleneck");
    e = ground_truth(g, kind, d);
    ctx.config()["kind"] = o.kind.empty() ? "ra" : o.kind;
    ctx.config()["d"] = d;
  }
  ctx.config()["frac"] = o.frac;
  ctx.config()["invert"] = o.invert;
  const auto cent = centrality(e);
  if (cent.degenerate) std::cerr << "warning: embedding maps distinct states to the same point\n";
  const auto selected = top_bottlenecks(cent.values, o.frac, o.invert);
  ctx.write_output("bottlenecks.csv", centrality_to_csv(e, cent, selected));
  for (auto s : selected) std::cout << e.coords.at(s).x << ',' << e.coords.at(s).y << '\n';
  return 0;
}

int cmd_commute(RunContext& ctx, const Options& o) {
  const auto map = ctx.load_map(o.map, o.resolution);
  const auto g = build_graph(map.maze);
  ctx.config()["method"] = o.method;
  if (o.method == "solve" || o.method == "pinv") {
    const auto times = commute(g, o.method == "solve" ? CommuteMethod::Solve : CommuteMethod::PseudoInverse);
    ctx.write_output("commute.csv", matrix_to_csv(times.n));
    return 0;
  }
  if (o.method != "mc") throw Error(ErrorCode::InvalidConfig, "--method must be solve, pinv or mc");
  const auto seed = require_seed(ctx, o);
  if (o.source.empty() || o.goal.empty()) throw Error(ErrorCode::InvalidConfig, "--method mc needs --source and --goal");
  const auto s = state_of(map.maze, parse_cell(o.source));
  const auto t = state_of(map.maze, parse_cell(o.goal));
  ctx.config()["source"] = o.source;
  ctx.config()["goal"] = o.goal;
  ctx.config()["walks"] = o.walks;
  ctx.config()["cap"] = o.cap;
  const auto est = commute_mc(g, s, t, o.walks, o.cap, seed);
  if (est.bias_warning) std::cerr << "warning: " << est.capped << " walks hit the step cap\n";
  const auto json = mc_to_json(est);
  ctx.write_output("commute_mc.json", json + "\n");
  std::cout << json << "\n";
  return 0;
}

}  // namespace spectral_reach::cli
