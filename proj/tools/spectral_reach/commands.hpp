#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "context.hpp"

namespace spectral_reach::cli {

struct Options {
  std::string map;
  double resolution = 1.0;
  std::string kind;
  int d = 0;
  std::string goal;
  std::string source;
  double tau = 0.0;
  std::optional<std::uint64_t> seed;
  std::size_t seeds = 10;
  std::size_t episodes = 0;
  std::size_t episode_len = 50;
  std::size_t iterations = 0;
  std::string embedding;
  std::string suite = "all";
  double frac = 0.2;
  bool invert = false;
  bool normalize = false;
  std::string method = "solve";
  std::uint64_t walks = 100000;
  std::uint64_t cap = 1000000;
  std::string manifest;
};

int cmd_env(RunContext& ctx, const Options& o);
int cmd_embed(RunContext& ctx, const Options& o);
int cmd_heatmap(RunContext& ctx, const Options& o);
int cmd_verify(RunContext& ctx, const Options& o);
int cmd_learn(RunContext& ctx, const Options& o);
int cmd_shape(RunContext& ctx, const Options& o);
int cmd_bottleneck(RunContext& ctx, const Options& o);
int cmd_commute(RunContext& ctx, const Options& o);

}  // namespace spectral_reach::cli
