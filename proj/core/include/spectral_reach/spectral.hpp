#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral_reach/envgrid.hpp"

namespace spectral_reach {

class StateGraph;

/// Eigenvalues at or below this are treated as zero when testing connectivity.
inline constexpr double kConnectivityTolerance = 1e-9;

/// Full ascending spectrum of a graph Laplacian with unit eigenvectors.
///
/// Sign convention "max-abs-positive": the entry of largest magnitude in each
/// eigenvector is positive; among entries within 1e-10 of that magnitude the
/// lowest state index decides.
struct SpectralBasis {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::string sign_convention = "max-abs-positive";

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
};

/// Symmetric eigendecomposition with the sign convention applied.
SpectralBasis eig_sym(const Eigen::MatrixXd& laplacian);

/// eig_sym of g's Laplacian.
SpectralBasis spectral_basis(const StateGraph& g);

enum class EmbeddingKind { LapRep, RaLapRep, Learned };

std::string to_string(EmbeddingKind kind);

/// Per-state vectors. An embedding with dimension parameter d stores d - 1
/// columns, holding eigen-indices 2..d (column 0 is eigen-index 2); the
/// constant first eigenvector is never stored.
struct Embedding {
  EmbeddingKind kind = EmbeddingKind::LapRep;
  int d = 0;
  Eigen::MatrixXd vectors;           // |S| x (d - 1)
  Eigen::VectorXd eigenvalues;       // eigenvalues (true or estimated) for indices 2..d
  std::vector<Cell> coords;          // optional, for export
  std::string source;

  std::size_t states() const noexcept { return static_cast<std::size_t>(vectors.rows()); }
};

/// LapRep: row s = (v_2[s], ..., v_d[s]). Requires 2 <= d <= |S|.
Embedding laprep(const SpectralBasis& basis, int d);

/// RA-LapRep: row s = (v_2[s]/sqrt(l_2), ..., v_d[s]/sqrt(l_d)).
/// Throws GraphDisconnected when l_2 <= kConnectivityTolerance.
Embedding ra_laprep(const SpectralBasis& basis, int d);

/// Euclidean distance between two rows.
double embed_dist(const Embedding& e, std::size_t s, std::size_t t);

/// Distances from every state to `goal`.
Eigen::VectorXd distances_to(const Embedding& e, std::size_t goal);

/// Truncated commute estimate V_G * dist^2 under the d-dimensional RA-LapRep.
double truncated_commute(const SpectralBasis& basis, double volume, int d, std::size_t s, std::size_t t);

/// Exact truncation error n(s,t) - n~_d(s,t) = V_G * sum_{i>d} (v_i[s]-v_i[t])^2 / l_i.
double truncation_tail(const SpectralBasis& basis, double volume, int d, std::size_t s, std::size_t t);

/// 4 * V_G * sum_{i>d} 1/l_i, an upper bound on truncation_tail: for unit
/// eigenvectors (v_i[s]-v_i[t])^2 <= 2(v_i[s]^2 + v_i[t]^2) <= 2.
double truncation_bound(const SpectralBasis& basis, double volume, int d);

/// CSV with header state_index,x,y,e2,...,ed.
std::string embedding_to_csv(const Embedding& e);

/// Inverse of embedding_to_csv; kind is recorded as Learned unless given.
Embedding embedding_from_csv(const std::string& text, EmbeddingKind kind = EmbeddingKind::Learned);

/// JSON {eigenvalues:[...], sign_convention:"max-abs-positive"}.
std::string basis_to_json(const SpectralBasis& basis);

}  // namespace spectral_reach
