#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "spectral_reach/graph.hpp"

namespace spectral_reach {

/// m(j|i): expected steps of the D^-1 A walk from i until it first hits j.
/// Stored with row = start i, column = target j; the diagonal is zero.
struct FirstPassageMatrix {
  Eigen::MatrixXd m;
  double operator()(std::size_t target, std::size_t start) const {
    return m(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(target));
  }
};

enum class CommuteMethod { Solve, PseudoInverse, MonteCarlo };

std::string to_string(CommuteMethod method);

struct MonteCarloEstimate {
  double estimate = 0;
  double stderr_ = 0;
  std::uint64_t walks = 0;
  std::uint64_t capped = 0;
  std::uint64_t cap = 0;
  std::uint64_t seed = 0;
  /// Set when more than 0.1% of round trips hit the step cap.
  bool bias_warning = false;
};

/// Pairwise average commute times n(i,j) = m(j|i) + m(i|j).
struct CommuteMatrix {
  Eigen::MatrixXd n;
  CommuteMethod method = CommuteMethod::Solve;
};

/// One dense LU solve of (I - P_{-j}) m = 1 per target j (P = D^-1 A with j removed).
/// Throws GraphDisconnected; SingularSystem names the offending target.
FirstPassageMatrix first_passage(const StateGraph& g);

/// method Solve: n = m + m^T from first_passage.
/// method PseudoInverse: n(i,j) = V_G (l+_ii + l+_jj - 2 l+_ij) from the eigenbasis.
CommuteMatrix commute(const StateGraph& g, CommuteMethod method);

/// Monte Carlo round trips s -> t -> s of the D^-1 A walk. Walk k draws from
/// the substream (seed, k), so the estimate does not depend on thread count.
/// Round trips longer than `cap` steps are excluded from the mean and counted.
MonteCarloEstimate commute_mc(const StateGraph& g, std::size_t s, std::size_t t, std::uint64_t walks,
                              std::uint64_t cap, std::uint64_t seed);

/// (e_s - e_t)^T L+ (e_s - e_t).
double effective_resistance(const StateGraph& g, const PseudoInverse& lplus, std::size_t s, std::size_t t);

/// Dense CSV, full precision, no header.
std::string matrix_to_csv(const Eigen::MatrixXd& m);

/// JSON {estimate, stderr, walks, capped, seed, cap, bias_warning}.
std::string mc_to_json(const MonteCarloEstimate& est);

}  // namespace spectral_reach
