#include "verify.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "spectral_reach/bundled_maps.hpp"
#include "spectral_reach/commute.hpp"
#include "spectral_reach/eigensolver.hpp"
#include "spectral_reach/error.hpp"
#include "spectral_reach/graph.hpp"
#include "spectral_reach/mds.hpp"
#include "spectral_reach/spectral.hpp"

namespace spectral_reach::cli {

namespace {

const std::vector<std::string> kZoo{"k2", "p3", "c4", "tworoom", "fourroom"};

struct Recorder {
  std::string suite;
  std::string graph;
  std::vector<CheckResult>& out;

  // Passes when value <= tolerance.
  void at_most(const std::string& check, double value, double tolerance) {
    out.push_back({suite, graph, check, value, tolerance, std::isfinite(value) && value <= tolerance});
  }
};

double relative_max(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double scale = std::max({std::abs(a(i, j)), std::abs(b(i, j)), 1e-300});
      if (a(i, j) == b(i, j)) continue;
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / scale);
    }
  }
  return worst;
}

void graph_checks(Recorder r, const StateGraph& g) {
  r.at_most("volume_is_twice_edge_count", std::abs(g.volume() - 2.0 * static_cast<double>(g.edge_count())), 0.0);
  const Eigen::MatrixXd l = g.laplacian();
  r.at_most("laplacian_row_sums", l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
  r.at_most("laplacian_symmetry", (l - l.transpose()).cwiseAbs().maxCoeff(), 0.0);
  r.at_most("extra_components", static_cast<double>(connected_components(g).size() - 1), 0.0);
}

void spectral_checks(Recorder r, const StateGraph& g, const SpectralBasis& basis) {
  const Eigen::MatrixXd l = g.laplacian();
  const auto& v = basis.eigenvectors;
  const auto& lam = basis.eigenvalues;
  const double scale = std::max(1.0, lam.maxCoeff());
  r.at_most("eigen_residual", (l * v - v * lam.asDiagonal()).cwiseAbs().maxCoeff() / scale, 1e-10);
  const auto n = static_cast<Eigen::Index>(g.size());
  r.at_most("orthonormality", (v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  r.at_most("first_eigenvalue_zero", std::abs(lam[0]), 1e-9);
  double descent = 0;
  for (Eigen::Index i = 1; i < lam.size(); ++i) descent = std::max(descent, lam[i - 1] - lam[i]);
  r.at_most("ascending_order", descent, 0.0);
  r.at_most("trace_equals_volume", std::abs(lam.sum() - g.volume()) / g.volume(), 1e-10);
}

void commute_checks(Recorder r, const StateGraph& g, const SpectralBasis& basis) {
  const auto solve = commute(g, CommuteMethod::Solve).n;
  const auto pinv = commute(g, CommuteMethod::PseudoInverse).n;
  const auto lplus = pseudo_inverse(g, basis);
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd resistance(n, n), embedded(n, n);
  const auto phi = ra_laprep(basis, static_cast<int>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto s = static_cast<std::size_t>(i), t = static_cast<std::size_t>(j);
      resistance(i, j) = g.volume() * effective_resistance(g, lplus, s, t);
      const double dist = embed_dist(phi, s, t);
      embedded(i, j) = g.volume() * dist * dist;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) resistance(i, i) = embedded(i, i) = 0.0;
  r.at_most("solve_vs_pseudo_inverse", relative_max(solve, pinv), 1e-7);
  r.at_most("solve_vs_resistance", relative_max(solve, resistance), 1e-7);
  r.at_most("embedding_distance_identity", relative_max(embedded, solve), 1e-8);
  r.at_most("commute_symmetry", (solve - solve.transpose()).cwiseAbs().maxCoeff(), 1e-9 * solve.maxCoeff());
}

void mds_checks(Recorder r, const StateGraph& g, const SpectralBasis& basis) {
  const auto times = commute(g, CommuteMethod::Solve).n;
  const Eigen::MatrixXd b = double_center(times);
  const auto lplus = pseudo_inverse(g, basis).matrix;
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  r.at_most("centered_equals_scaled_pseudo_inverse", (b - g.volume() * lplus).cwiseAbs().maxCoeff() / scale, 1e-9);
  const auto eig = symmetric_eigen(b);
  r.at_most("centered_is_psd", std::max(0.0, -eig.eigenvalues[0]) / scale, 1e-9);
  const auto x = classic_mds(times);
  const auto phi = ra_laprep(basis, static_cast<int>(g.size()));
  r.at_most("equivalence_residual", equivalence_residual(x, phi, g.volume()), 1e-6);
  double recon = 0;
  for (Eigen::Index i = 0; i < times.rows(); ++i) {
    for (Eigen::Index j = 0; j < times.cols(); ++j) {
      recon = std::max(recon, std::abs((x.embedding.row(i) - x.embedding.row(j)).norm() - std::sqrt(times(i, j))));
    }
  }
  r.at_most("distance_reconstruction", recon, 1e-6);
}

void truncation_checks(Recorder r, const StateGraph& g, const SpectralBasis& basis) {
  const auto n = g.size();
  const double v = g.volume();
  const auto times = commute(g, CommuteMethod::Solve).n;
  const double tol = 1e-9 * std::max(1.0, times.maxCoeff());
  double negative = 0, increase = 0, at_full = 0, over_bound = -INFINITY, split = 0;
  std::vector<double> bounds(n + 1);
  for (std::size_t d = 2; d <= n; ++d) bounds[d] = truncation_bound(basis, v, static_cast<int>(d));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      double previous = INFINITY;
      for (std::size_t d = 2; d <= n; ++d) {
        const double tail = truncation_tail(basis, v, static_cast<int>(d), s, t);
        negative = std::max(negative, -tail);
        if (std::isfinite(previous)) increase = std::max(increase, tail - previous);
        over_bound = std::max(over_bound, tail - bounds[d]);
        const double head = truncated_commute(basis, v, static_cast<int>(d), s, t);
        split = std::max(split, std::abs(head + tail - times(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t))));
        previous = tail;
      }
      at_full = std::max(at_full, std::abs(previous));
    }
  }
  r.at_most("tail_nonnegative", negative, tol);
  r.at_most("tail_nonincreasing", increase, tol);
  r.at_most("tail_zero_at_full_dimension", at_full, tol);
  r.at_most("tail_within_bound", std::max(0.0, over_bound), tol);
  r.at_most("head_plus_tail_equals_commute", split, 1e-7 * std::max(1.0, times.maxCoeff()));
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite) {
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
    throw Error(ErrorCode::InvalidConfig, "unknown suite '" + suite + "'");
  }
  const bool all = suite == "all";
  std::vector<CheckResult> results;
  for (const auto& name : kZoo) {
    const auto g = build_graph(parse_maze(*bundled_map(name)));
    const auto basis = spectral_basis(g);
    if (all || suite == "graph") graph_checks({"graph", name, results}, g);
    if (all || suite == "spectral") spectral_checks({"spectral", name, results}, g, basis);
    if (all || suite == "commute") commute_checks({"commute", name, results}, g, basis);
    if (all || suite == "mds") mds_checks({"mds", name, results}, g, basis);
    if (all || suite == "truncation") truncation_checks({"truncation", name, results}, g, basis);
  }
  return results;
}

std::string results_to_jsonl(const std::vector<CheckResult>& results) {
  std::string out;
  for (const auto& r : results) {
    nlohmann::json line{{"suite", r.suite},   {"graph", r.graph},         {"check", r.check},
                        {"value", r.value},   {"tolerance", r.tolerance}, {"pass", r.pass}};
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace spectral_reach::cli
