#pragma once

#include <Eigen/Dense>

#include "spectral_reach/spectral.hpp"

namespace spectral_reach {

struct MdsResult {
  Eigen::MatrixXd embedding;      // |S| x r, r = retained eigenpairs
  Eigen::VectorXd eigenvalues;    // retained eigenvalues of B, descending
  double cutoff = 0;
  /// max |row sum| of B.
  double centering_residual = 0;
  /// B had an eigenvalue below -cutoff.
  bool indefinite = false;
  double most_negative_eigenvalue = 0;
};

/// B = -1/2 J D2 J with J = I - 11^T / n.
/// Throws NotSymmetric, NegativeEntry, and InvalidInput for a nonzero diagonal.
Eigen::MatrixXd double_center(const Eigen::MatrixXd& d2);

/// Keeps eigenpairs of B above relative_cutoff * (largest eigenvalue) and
/// returns X = Q Lambda^{1/2}. An indefinite B is flagged, not rejected.
MdsResult classic_mds(const Eigen::MatrixXd& d2, double relative_cutoff = 1e-9);

/// max over pairs | |X_i - X_j| - sqrt(V_G) * embed_dist(phi, i, j) |.
double equivalence_residual(const MdsResult& x, const Embedding& phi, double volume);

}  // namespace spectral_reach
