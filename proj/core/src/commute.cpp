#include "spectral_reach/commute.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectral_reach/error.hpp"
#include "spectral_reach/parallel.hpp"
#include "spectral_reach/rng.hpp"
#include "spectral_reach/spectral.hpp"

namespace spectral_reach {

std::string to_string(CommuteMethod method) {
  switch (method) {
    case CommuteMethod::Solve: return "solve";
    case CommuteMethod::PseudoInverse: return "pseudo-inverse";
    case CommuteMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

FirstPassageMatrix first_passage(const StateGraph& g) {
  require_connected(g, "first_passage");
  const auto n = static_cast<Eigen::Index>(g.size());
  FirstPassageMatrix out{Eigen::MatrixXd::Zero(n, n)};
  if (n == 1) return out;

  const Eigen::MatrixXd& adj = g.adjacency();
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t target) {
    const auto j = static_cast<Eigen::Index>(target);
    Eigen::MatrixXd system(n - 1, n - 1);
    for (Eigen::Index r = 0, i = 0; i < n; ++i) {
      if (i == j) continue;
      const double inv_deg = 1.0 / g.degrees()[static_cast<std::size_t>(i)];
      for (Eigen::Index c = 0, k = 0; k < n; ++k) {
        if (k == j) continue;
        system(r, c) = (i == k ? 1.0 : 0.0) - adj(i, k) * inv_deg;
        ++c;
      }
      ++r;
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    if (!(lu.rcond() > 1e-14)) {
      throw Error(ErrorCode::SingularSystem, "first-passage system for target " + std::to_string(target));
    }
    const Eigen::VectorXd times = lu.solve(Eigen::VectorXd::Ones(n - 1));
    for (Eigen::Index r = 0, i = 0; i < n; ++i) {
      if (i == j) continue;
      out.m(i, j) = times[r++];
    }
  });
  return out;
}

CommuteMatrix commute(const StateGraph& g, CommuteMethod method) {
  switch (method) {
    case CommuteMethod::Solve: {
      const auto fp = first_passage(g);
      return {fp.m + fp.m.transpose(), method};
    }
    case CommuteMethod::PseudoInverse: {
      require_connected(g, "commute");
      const auto lplus = pseudo_inverse(g, spectral_basis(g)).matrix;
      const Eigen::VectorXd diag = lplus.diagonal();
      const auto n = diag.size();
      Eigen::MatrixXd times =
          g.volume() * (diag.replicate(1, n) + diag.transpose().replicate(n, 1) - 2.0 * lplus);
      times.diagonal().setZero();
      return {std::move(times), method};
    }
    case CommuteMethod::MonteCarlo:
      break;
  }
  throw Error(ErrorCode::InvalidConfig, "commute matrix for Monte Carlo is built pair by pair via commute_mc");
}

MonteCarloEstimate commute_mc(const StateGraph& g, std::size_t s, std::size_t t, std::uint64_t walks,
                              std::uint64_t cap, std::uint64_t seed) {
  require_connected(g, "commute_mc");
  if (s >= g.size() || t >= g.size()) throw Error(ErrorCode::InvalidState, "state index out of range");
  if (walks < 1 || cap < 1) throw Error(ErrorCode::InvalidConfig, "walks and cap must be at least 1");

  // Per-walk step counts; 0 marks a capped walk (a completed round trip with s != t is >= 2 steps).
  std::vector<std::uint64_t> steps(walks, 0);
  const auto& nbrs = g.neighbors();
  const std::size_t chunks = std::min<std::uint64_t>(walks, 64);
  parallel_for(chunks, [&](std::size_t chunk) {
    for (std::uint64_t k = chunk; k < walks; k += chunks) {
      Rng rng(seed, k);
      std::uint64_t count = 0;
      bool capped = false;
      for (std::size_t target : {t, s}) {
        std::size_t here = target == t ? s : t;
        while (here != target) {
          if (++count > cap) {
            capped = true;
            break;
          }
          const auto& options = nbrs[here];
          here = options[rng.below(options.size())];
        }
        if (capped) break;
      }
      steps[k] = capped ? 0 : count;
    }
  });

  MonteCarloEstimate est;
  est.walks = walks;
  est.cap = cap;
  est.seed = seed;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t used = 0;
  for (std::uint64_t k = 0; k < walks; ++k) {
    if (s != t && steps[k] == 0) {
      ++est.capped;
      continue;
    }
    const auto x = static_cast<double>(steps[k]);
    sum += x;
    sum_sq += x * x;
    ++used;
  }
  if (used > 0) {
    est.estimate = sum / static_cast<double>(used);
    if (used > 1) {
      const double var = (sum_sq - sum * sum / static_cast<double>(used)) / static_cast<double>(used - 1);
      est.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(used));
    }
  }
  est.bias_warning = static_cast<double>(est.capped) > 1e-3 * static_cast<double>(walks);
  return est;
}

double effective_resistance(const StateGraph& g, const PseudoInverse& lplus, std::size_t s, std::size_t t) {
  require_connected(g, "effective_resistance");
  const auto& l = lplus.matrix;
  if (l.rows() != static_cast<Eigen::Index>(g.size())) {
    throw Error(ErrorCode::DimensionMismatch, "pseudo-inverse does not match graph");
  }
  const auto i = static_cast<Eigen::Index>(s);
  const auto j = static_cast<Eigen::Index>(t);
  return std::max(0.0, l(i, i) + l(j, j) - 2.0 * l(i, j));
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  return out.str();
}

std::string mc_to_json(const MonteCarloEstimate& est) {
  nlohmann::json doc;
  doc["estimate"] = est.estimate;
  doc["stderr"] = est.stderr_;
  doc["walks"] = est.walks;
  doc["capped"] = est.capped;
  doc["cap"] = est.cap;
  doc["seed"] = est.seed;
  doc["bias_warning"] = est.bias_warning;
  return doc.dump();
}

}  // namespace spectral_reach
