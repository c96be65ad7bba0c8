#include "spectral_reach/replearn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spectral_reach/error.hpp"
#include "spectral_reach/parallel.hpp"
#include "spectral_reach/rng.hpp"
#include "spectral_reach/stats.hpp"

namespace spectral_reach {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Stream ids under the training seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kPairStream = 1;
constexpr std::uint64_t kStateStream = 2;

}  // namespace

TransitionDataset collect_dataset(const MazeSpec& maze, const CollectConfig& config) {
  if (config.episode_len < 1) throw Error(ErrorCode::InvalidConfig, "episode_len must be at least 1");
  if (config.episodes < 1) throw Error(ErrorCode::InvalidConfig, "episodes must be at least 1");
  if (!(config.tau >= 0.0) || !std::isfinite(config.tau)) {
    throw Error(ErrorCode::InvalidConfig, "tau must be a finite nonnegative number");
  }
  const StateIndex index(maze);
  require_connected(build_graph(maze), "collect_dataset");

  const std::size_t n = index.size();
  std::vector<std::array<std::size_t, 4>> next(n);
  std::vector<double> cumulative(n);
  bool any_bias = false;
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const Cell c = index.coord(s);
    for (std::size_t a = 0; a < kActions.size(); ++a) next[s][a] = *index.index_of(step(maze, c, kActions[a]));
    const bool bias = maze.at(c) == CellKind::Bias;
    any_bias = any_bias || bias;
    total += bias ? std::exp(config.tau) : 1.0;
    cumulative[s] = total;
  }
  if (config.tau > 0.0 && !any_bias) {
    throw Error(ErrorCode::NoBiasCells, "tau > 0 requires 'B' cells in the map");
  }

  TransitionDataset data;
  data.n_states = n;
  data.coords = index.coords();
  data.config = config;
  data.episodes.resize(config.episodes);
  parallel_for(config.episodes, [&](std::size_t e) {
    Rng rng(config.seed, e);
    auto& episode = data.episodes[e];
    episode.resize(config.episode_len + 1);
    const double u = rng.uniform() * total;
    std::size_t s = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                             cumulative.begin());
    s = std::min(s, n - 1);
    episode[0] = s;
    for (std::size_t t = 1; t <= config.episode_len; ++t) {
      s = next[s][rng.below(4)];
      episode[t] = s;
    }
  });

  data.visits.assign(n, 0);
  for (const auto& episode : data.episodes) {
    for (std::size_t s : episode) ++data.visits[s];
  }
  data.total_steps = config.episodes * config.episode_len;
  return data;
}

StateGraph induced_graph(const TransitionDataset& data) {
  std::vector<std::pair<std::size_t, std::size_t>> transitions;
  for (const auto& episode : data.episodes) {
    for (std::size_t t = 0; t + 1 < episode.size(); ++t) transitions.emplace_back(episode[t], episode[t + 1]);
  }
  return StateGraph(data.n_states, transitions, data.coords);
}

std::uint64_t sample_offset(Rng& rng, double discount) { return rng.geometric(1.0 - discount); }

LearnedRep train_graph_drawing(const TransitionDataset& data, int d, const TrainConfig& config) {
  if (d < 2) throw Error(ErrorCode::DimensionOutOfRange, "d must be at least 2");
  if (static_cast<std::size_t>(d) > data.n_states) {
    throw Error(ErrorCode::DimensionOutOfRange, "d exceeds the number of states");
  }
  if (config.batch < 1 || config.iterations < 1 || !(config.step_size > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "batch, iterations and step size must be positive");
  }
  if (!(config.discount >= 0.0 && config.discount < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "discount must lie in [0, 1)");
  }
  if (data.episodes.empty() || data.episodes.front().size() < 2) {
    throw Error(ErrorCode::EmptyDataset, "dataset has no transitions");
  }
  require_connected(induced_graph(data), "train_graph_drawing");

  const auto n = static_cast<Eigen::Index>(data.n_states);
  const std::size_t len = data.episodes.front().size() - 1;
  const std::size_t episodes = data.episodes.size();
  const double batch = static_cast<double>(config.batch);

  Eigen::VectorXd c(d);
  for (int i = 0; i < d; ++i) c[i] = d - i;
  Eigen::MatrixXd w(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) w(i, j) = std::min(c[i], c[j]);
  }

  RowMatrix f(n, d);
  Rng init(config.seed, kInitStream);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (int i = 0; i < d; ++i) f(s, i) = init.normal();
  }
  Rng pairs(config.seed, kPairStream);
  Rng states(config.seed, kStateStream);

  auto draw_state = [&] {
    const auto& episode = data.episodes[states.below(episodes)];
    return episode[states.below(len + 1)];
  };

  RowMatrix grad(n, d), m1 = RowMatrix::Zero(n, d), m2 = RowMatrix::Zero(n, d);
  Eigen::VectorXd count1(n), count2(n);
  constexpr double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
  double b1t = 1.0, b2t = 1.0;

  LearnedRep rep;
  rep.config = config;
  rep.d = d;
  double initial = 0.0, smoothed = 0.0, smoothed_penalty = 0.0;

  for (std::size_t it = 0; it < config.iterations; ++it) {
    grad.setZero();
    double attraction = 0.0;
    for (std::size_t k = 0; k < config.batch; ++k) {
      std::size_t e = 0, t = 0;
      std::uint64_t offset = 0;
      do {
        e = pairs.below(episodes);
        t = pairs.below(len);
        offset = sample_offset(pairs, config.discount);
      } while (t + offset > len);
      const auto s = static_cast<Eigen::Index>(data.episodes[e][t]);
      const auto s2 = static_cast<Eigen::Index>(data.episodes[e][t + offset]);
      if (s == s2) continue;
      for (int i = 0; i < d; ++i) {
        const double diff = f(s, i) - f(s2, i);
        attraction += c[i] * diff * diff;
        const double g = 2.0 * c[i] * diff / batch;
        grad(s, i) += g;
        grad(s2, i) -= g;
      }
    }
    attraction /= batch;

    // Two independent state batches: one estimates E[f f^T], the other carries the gradient.
    count1.setZero();
    count2.setZero();
    for (std::size_t k = 0; k < config.batch; ++k) count1[static_cast<Eigen::Index>(draw_state())] += 1.0;
    for (std::size_t k = 0; k < config.batch; ++k) count2[static_cast<Eigen::Index>(draw_state())] += 1.0;
    const Eigen::MatrixXd cov = f.transpose() * count1.asDiagonal() * f / batch;
    Eigen::MatrixXd err = cov - Eigen::MatrixXd::Identity(d, d);
    double penalty = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) penalty += w(i, j) * err(i, j) * err(i, j);
    }
    Eigen::MatrixXd mix = w.cwiseProduct(err);
    mix.diagonal() *= 2.0;
    grad += (2.0 * config.penalty / batch) * count2.asDiagonal() * f * mix;

    const double objective = attraction + config.penalty * penalty;
    if (it == 0) {
      initial = smoothed = objective;
      smoothed_penalty = penalty;
    } else {
      smoothed = 0.99 * smoothed + 0.01 * objective;
      smoothed_penalty = 0.99 * smoothed_penalty + 0.01 * penalty;
    }
    if (!std::isfinite(smoothed) || smoothed > 10.0 * initial) {
      throw Error(ErrorCode::DivergedObjective,
                  "objective " + std::to_string(smoothed) + " at iteration " + std::to_string(it) +
                      " exceeds ten times the initial " + std::to_string(initial));
    }
    if (config.log_every > 0 && (it % config.log_every == 0 || it + 1 == config.iterations)) {
      rep.log.push_back({it, smoothed, smoothed_penalty});
    }

    const double progress = static_cast<double>(it) / static_cast<double>(config.iterations);
    const double lr = config.step_size * std::pow(config.final_step_fraction, progress);
    b1t *= beta1;
    b2t *= beta2;
    m1 = beta1 * m1 + (1.0 - beta1) * grad;
    m2 = beta2 * m2 + (1.0 - beta2) * grad.cwiseAbs2();
    f.array() -= lr * (m1.array() / (1.0 - b1t)) / ((m2.array() / (1.0 - b2t)).sqrt() + adam_eps);
  }

  rep.final_objective = smoothed;
  rep.f = f;
  for (int i = 0; i < d; ++i) {
    const double norm = rep.f.col(i).norm();
    if (norm > 0) rep.f.col(i) /= norm;
  }
  return rep;
}

Eigen::VectorXd estimate_eigenvalues(const LearnedRep& rep, const TransitionDataset& data) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  const int d = static_cast<int>(rep.f.cols());
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(std::max(d - 1, 0));
  std::size_t pairs = 0;
  for (const auto& episode : data.episodes) {
    for (std::size_t t = 0; t + 1 < episode.size(); ++t) {
      const std::size_t s = episode[t], s2 = episode[t + 1];
      if (s == s2) continue;
      edges.emplace(std::min(s, s2), std::max(s, s2));
      ++pairs;
      for (int i = 1; i < d; ++i) {
        const double diff = rep.f(static_cast<Eigen::Index>(s), i) - rep.f(static_cast<Eigen::Index>(s2), i);
        sums[i - 1] += diff * diff;
      }
    }
  }
  if (pairs == 0) throw Error(ErrorCode::EmptyDataset, "no non-self transitions in dataset");
  return sums * (static_cast<double>(edges.size()) / static_cast<double>(pairs));
}

Embedding learned_ra_laprep(const LearnedRep& rep, const Eigen::VectorXd& eigenvalues) {
  const auto cols = rep.f.cols() - 1;
  if (eigenvalues.size() != cols) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalue count does not match the learned dimensions");
  }
  for (Eigen::Index i = 0; i < cols; ++i) {
    if (!(eigenvalues[i] > 1e-8)) {
      throw Error(ErrorCode::DegenerateEigenvalue,
                  "estimated eigenvalue " + std::to_string(i + 2) + " is " + std::to_string(eigenvalues[i]));
    }
  }
  Embedding e;
  e.kind = EmbeddingKind::Learned;
  e.d = static_cast<int>(rep.f.cols());
  e.eigenvalues = eigenvalues;
  e.vectors = rep.f.rightCols(cols) * eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal();
  e.source = "graph-drawing";
  return e;
}

RepQuality rep_quality(const Embedding& learned, const Embedding& truth, const Eigen::MatrixXd& geodesics,
                       const std::vector<std::size_t>& goals) {
  const auto cols = learned.vectors.cols();
  if (learned.states() != truth.states() || truth.vectors.cols() < cols ||
      geodesics.rows() != static_cast<Eigen::Index>(learned.states())) {
    throw Error(ErrorCode::DimensionMismatch, "learned and reference embeddings are not comparable");
  }
  RepQuality q;
  const Eigen::VectorXd& lam = truth.eigenvalues;
  const double scale = lam.size() > 0 ? lam.cwiseAbs().maxCoeff() : 1.0;
  for (Eigen::Index i = 0; i < cols; ++i) {
    bool degenerate = false;
    if (i > 0 && std::abs(lam[i] - lam[i - 1]) <= kDegenerateGap * scale) degenerate = true;
    if (i + 1 < lam.size() && std::abs(lam[i + 1] - lam[i]) <= kDegenerateGap * scale) degenerate = true;
    const auto a = learned.vectors.col(i);
    const auto b = truth.vectors.col(i);
    q.cosines.push_back(degenerate ? std::nan("") : std::abs(a.dot(b)) / (a.norm() * b.norm()));
    if (i < learned.eigenvalues.size()) {
      q.eigenvalue_relative_errors.push_back(std::abs(learned.eigenvalues[i] - lam[i]) / lam[i]);
    }
  }
  Embedding truth_cut = truth;
  truth_cut.vectors = truth.vectors.leftCols(cols);
  for (std::size_t goal : goals) {
    if (goal >= learned.states()) throw Error(ErrorCode::InvalidState, "goal index out of range");
    const Eigen::VectorXd dl = distances_to(learned, goal);
    const Eigen::VectorXd dt = distances_to(truth_cut, goal);
    const Eigen::VectorXd dg = geodesics.col(static_cast<Eigen::Index>(goal));
    const std::vector<double> vl(dl.data(), dl.data() + dl.size());
    q.spearman_geodesic.push_back(spearman(vl, std::vector<double>(dg.data(), dg.data() + dg.size())));
    q.spearman_truth.push_back(spearman(vl, std::vector<double>(dt.data(), dt.data() + dt.size())));
  }
  return q;
}

std::string train_log_to_csv(const std::vector<TrainLogEntry>& log) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,objective,penalty\n";
  for (const auto& row : log) out << row.iteration << ',' << row.objective << ',' << row.penalty << '\n';
  return out.str();
}

std::string dataset_to_json(const TransitionDataset& data) {
  nlohmann::json doc;
  doc["n_states"] = data.n_states;
  doc["config"] = {{"episodes", data.config.episodes},
                   {"episode_len", data.config.episode_len},
                   {"tau", data.config.tau},
                   {"seed", data.config.seed}};
  doc["episodes"] = data.episodes;
  return doc.dump();
}

}  // namespace spectral_reach
