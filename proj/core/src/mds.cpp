#include "spectral_reach/mds.hpp"

#include <algorithm>
#include <cmath>

#include "spectral_reach/eigensolver.hpp"
#include "spectral_reach/error.hpp"

namespace spectral_reach {

Eigen::MatrixXd double_center(const Eigen::MatrixXd& d2) {
  if (d2.rows() != d2.cols() || d2.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "squared-dissimilarity matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, d2.cwiseAbs().maxCoeff());
  if ((d2 - d2.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric, "squared-dissimilarity matrix");
  }
  if (d2.minCoeff() < 0) throw Error(ErrorCode::NegativeEntry, "squared-dissimilarity matrix");
  if (d2.diagonal().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidInput, "squared-dissimilarity matrix has a nonzero diagonal");
  }
  // -1/2 J D J expanded: subtract row and column means, add back the grand mean.
  const Eigen::VectorXd row_mean = d2.rowwise().mean();
  const double grand = row_mean.mean();
  Eigen::MatrixXd b = d2;
  b.colwise() -= row_mean;
  b.rowwise() -= row_mean.transpose();
  b.array() += grand;
  b *= -0.5;
  return 0.5 * (b + b.transpose());
}

MdsResult classic_mds(const Eigen::MatrixXd& d2, double relative_cutoff) {
  const Eigen::MatrixXd b = double_center(d2);
  const auto eig = symmetric_eigen(b);
  const auto n = b.rows();

  MdsResult out;
  out.centering_residual = b.rowwise().sum().cwiseAbs().maxCoeff();
  const double top = eig.eigenvalues[n - 1];
  out.cutoff = relative_cutoff * std::max(top, 0.0);
  out.most_negative_eigenvalue = std::min(0.0, eig.eigenvalues[0]);
  out.indefinite = eig.eigenvalues[0] < -std::max(out.cutoff, 1e-300);

  Eigen::Index keep = 0;
  for (Eigen::Index i = n - 1; i >= 0 && eig.eigenvalues[i] > out.cutoff; --i) ++keep;
  out.embedding.resize(n, keep);
  out.eigenvalues.resize(keep);
  for (Eigen::Index k = 0; k < keep; ++k) {
    const Eigen::Index i = n - 1 - k;
    out.eigenvalues[k] = eig.eigenvalues[i];
    out.embedding.col(k) = eig.eigenvectors.col(i) * std::sqrt(eig.eigenvalues[i]);
  }
  return out;
}

double equivalence_residual(const MdsResult& x, const Embedding& phi, double volume) {
  const auto n = x.embedding.rows();
  if (static_cast<std::size_t>(n) != phi.states()) {
    throw Error(ErrorCode::DimensionMismatch,
                "MDS has " + std::to_string(n) + " rows, embedding has " + std::to_string(phi.states()));
  }
  const double root_v = std::sqrt(volume);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double mds = (x.embedding.row(i) - x.embedding.row(j)).norm();
      const double rep = root_v * embed_dist(phi, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      worst = std::max(worst, std::abs(mds - rep));
    }
  }
  return worst;
}

}  // namespace spectral_reach
