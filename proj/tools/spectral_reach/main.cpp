#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "context.hpp"
#include "spectral_reach/error.hpp"
#include "verify.hpp"

namespace sr = spectral_reach;
namespace cli = spectral_reach::cli;

namespace {

int exit_code_for(sr::ErrorCategory category) {
  switch (category) {
    case sr::ErrorCategory::Usage: return 1;
    case sr::ErrorCategory::Domain: return 2;
    case sr::ErrorCategory::Numerical: return 3;
  }
  return 1;
}

int run(const std::vector<std::string>& args, sr::RunManifest* written);

int replay(const std::string& path) {
  const auto recorded = sr::RunManifest::from_json(sr::read_file(path));
  sr::RunManifest fresh;
  const int code = run(recorded.argv, &fresh);
  if (code != recorded.exit_code) {
    std::cerr << "replay: exit code " << code << " differs from recorded " << recorded.exit_code << "\n";
    return 3;
  }
  std::size_t mismatched = 0;
  for (const auto& out : recorded.outputs) {
    const auto it = std::find_if(fresh.outputs.begin(), fresh.outputs.end(),
                                 [&](const sr::FileDigest& f) { return f.name == out.name; });
    if (it == fresh.outputs.end() || it->fnv1a != out.fnv1a) {
      std::cerr << "replay: output " << out.name << " differs\n";
      ++mismatched;
    }
  }
  if (fresh.outputs.size() != recorded.outputs.size()) ++mismatched;
  if (mismatched > 0) return 3;
  std::cout << "replay ok: " << recorded.outputs.size() << " outputs identical\n";
  return 0;
}

int run(const std::vector<std::string>& args, sr::RunManifest* written) {
  CLI::App app{"Spectral state representations on maze graphs", "spectral_reach"};
  app.require_subcommand(1);
  cli::Options o;
  std::string out = "out";

  auto add_map = [&](CLI::App* sub) {
    sub->add_option("--map", o.map, "Map file (.txt grid or .json continuous) or builtin:NAME")->required();
    sub->add_option("--resolution", o.resolution, "Cells per unit for continuous mazes")->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out, "Output directory")->capture_default_str(); };

  auto* env = app.add_subcommand("env", "Build the state graph and print its statistics");
  add_map(env);
  add_out(env);

  auto* embed = app.add_subcommand("embed", "Export a LapRep or RA-LapRep embedding");
  add_map(embed);
  embed->add_option("--kind", o.kind, "lap or ra")->required()->check(CLI::IsMember({"lap", "ra"}));
  embed->add_option("--d", o.d, "Dimension parameter (default |S|)");
  add_out(embed);

  auto* heatmap = app.add_subcommand("heatmap", "Distance-to-goal grid and raster from an embedding CSV");
  heatmap->add_option("--embedding", o.embedding, "Embedding CSV")->required();
  heatmap->add_option("--goal", o.goal, "Goal cell x,y")->required();
  heatmap->add_flag("--normalize", o.normalize, "Scale distances to [0, 1]");
  add_out(heatmap);

  auto* verify = app.add_subcommand("verify", "Check the spectral identities on the bundled graph zoo");
  verify->add_option("--suite", o.suite, "graph, spectral, commute, mds, truncation or all")
      ->check(CLI::IsMember(cli::kSuites))
      ->capture_default_str();
  add_out(verify);

  auto* learn = app.add_subcommand("learn", "Collect transitions and learn an RA-LapRep approximation");
  add_map(learn);
  learn->add_option("--d", o.d, "Dimension parameter (default 10)");
  learn->add_option("--tau", o.tau, "Coverage temperature")->check(CLI::NonNegativeNumber);
  learn->add_option("--seed", o.seed, "Random seed")->required();
  learn->add_option("--episodes", o.episodes, "Dataset episodes (default 2000)");
  learn->add_option("--episode-len", o.episode_len, "Steps per episode")->capture_default_str();
  learn->add_option("--iterations", o.iterations, "Training iterations (default 100000)");
  add_out(learn);

  auto* shape = app.add_subcommand("shape", "Reward-shaping experiment with tabular Q-learning");
  add_map(shape);
  shape->add_option("--kind", o.kind, "Comma-separated kinds: ra_laprep,laprep,l2,none");
  shape->add_option("--d", o.d, "Embedding dimension (default 10)");
  shape->add_option("--goal", o.goal, "Goal cells x,y separated by ';' (default: G cells)");
  shape->add_option("--seed", o.seed, "First seed")->required();
  shape->add_option("--seeds", o.seeds, "Number of seeds")->capture_default_str();
  shape->add_option("--episodes", o.episodes, "Episodes per run (default 500)");
  shape->add_option("--embedding", o.embedding, "Embedding CSV used for ra_laprep shaping");
  add_out(shape);

  auto* bottleneck = app.add_subcommand("bottleneck", "Centrality-based bottleneck discovery");
  add_map(bottleneck);
  bottleneck->add_option("--kind", o.kind, "lap or ra (default ra)")->check(CLI::IsMember({"lap", "ra"}));
  bottleneck->add_option("--d", o.d, "Dimension parameter (default |S|)");
  bottleneck->add_option("--embedding", o.embedding, "Embedding CSV instead of the ground truth");
  bottleneck->add_option("--frac", o.frac, "Fraction of states selected")->capture_default_str();
  bottleneck->add_flag("--invert", o.invert, "Select the lowest centrality instead");
  add_out(bottleneck);

  auto* commute = app.add_subcommand("commute", "Average commute times");
  add_map(commute);
  commute->add_option("--method", o.method, "solve, pinv or mc")
      ->check(CLI::IsMember({"solve", "pinv", "mc"}))
      ->capture_default_str();
  commute->add_option("--source", o.source, "Walk start x,y (mc)");
  commute->add_option("--goal", o.goal, "Walk target x,y (mc)");
  commute->add_option("--seed", o.seed, "Random seed (mc)");
  commute->add_option("--walks", o.walks, "Round trips (mc)")->capture_default_str();
  commute->add_option("--cap", o.cap, "Step cap per round trip (mc)")->capture_default_str();
  add_out(commute);

  auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
  replay_cmd->add_option("--manifest", o.manifest, "manifest.json")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (replay_cmd->parsed()) return replay(o.manifest);
  } catch (const sr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.category());
  }

  auto* sub = app.get_subcommands().front();
  cli::RunContext ctx(sub->get_name(), args, out);
  int code = 1;
  try {
    if (sub == env) code = cli::cmd_env(ctx, o);
    else if (sub == embed) code = cli::cmd_embed(ctx, o);
    else if (sub == heatmap) code = cli::cmd_heatmap(ctx, o);
    else if (sub == verify) code = cli::cmd_verify(ctx, o);
    else if (sub == learn) code = cli::cmd_learn(ctx, o);
    else if (sub == shape) code = cli::cmd_shape(ctx, o);
    else if (sub == bottleneck) code = cli::cmd_bottleneck(ctx, o);
    else if (sub == commute) code = cli::cmd_commute(ctx, o);
  } catch (const sr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 1;
  }
  try {
    ctx.finish(code);
  } catch (const std::exception& e) {
    std::cerr << "error: cannot write manifest: " << e.what() << "\n";
    if (code == 0) code = 1;
  }
  if (written) *written = ctx.manifest();
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, nullptr);
}
