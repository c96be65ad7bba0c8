#pragma once

#include <Eigen/Dense>

namespace spectral_reach {

struct SymmetricEigenResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, matching order
  int max_iterations_used = 0;
};

inline constexpr Eigen::Index kMaxEigenSize = 4096;
inline constexpr int kMaxQlIterations = 100;

/// Dense symmetric eigendecomposition: Householder reduction to tridiagonal
/// form followed by the implicit-shift QL iteration, with the orthogonal
/// transforms accumulated into the eigenvector matrix. Deterministic for a
/// given input. Columns carry no sign normalization; see eig_sym for that.
///
/// Throws NotSymmetric when |A - A^T| exceeds 1e-12 (relative to max|A|, at
/// least 1), DimensionOutOfRange above kMaxEigenSize, and ConvergenceFailure
/// if any eigenvalue needs more than kMaxQlIterations QL steps.
SymmetricEigenResult symmetric_eigen(const Eigen::MatrixXd& a);

}  // namespace spectral_reach
