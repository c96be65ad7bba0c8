#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "spectral_reach/eigensolver.hpp"
#include "spectral_reach/error.hpp"
#include "spectral_reach/rng.hpp"

using namespace spectral_reach;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.normal();
  }
  return a;
}

void expect_decomposition(const Eigen::MatrixXd& a, const SymmetricEigenResult& r, double tol) {
  const auto n = a.rows();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  EXPECT_LE((a * r.eigenvectors - r.eigenvectors * r.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff(), tol * scale);
  EXPECT_LE((r.eigenvectors.transpose() * r.eigenvectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), tol);
  for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(r.eigenvalues[i - 1], r.eigenvalues[i]);
}

}  // namespace

TEST(SymmetricEigen, MatchesReferenceSolverOnRandomMatrices) {
  for (int n : {1, 2, 3, 7, 30, 120}) {
    const auto a = random_symmetric(n, static_cast<std::uint64_t>(n));
    const auto r = symmetric_eigen(a);
    expect_decomposition(a, r, 1e-11);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    EXPECT_LE((r.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, a.norm())) << n;
  }
}

TEST(SymmetricEigen, PathAndCycleSpectra) {
  const auto p3 = fixtures::graph_of(fixtures::kP3).laplacian();
  const auto r = symmetric_eigen(p3);
  const auto expected = oracle::path_spectrum(3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.eigenvalues[i], expected[static_cast<std::size_t>(i)], 1e-12);
    EXPECT_NEAR(oracle::char_poly_at(p3, r.eigenvalues[i]), 0.0, 1e-10);
  }
  EXPECT_NEAR(r.eigenvalues[1], 1.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues[2], 3.0, 1e-12);

  const auto c4 = symmetric_eigen(fixtures::graph_of(fixtures::kC4).laplacian());
  const auto cyc = oracle::cycle_spectrum(4);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(c4.eigenvalues[i], cyc[static_cast<std::size_t>(i)], 1e-12);
}

TEST(SymmetricEigen, OpenRoomMatchesProductSpectrum) {
  const auto g = fixtures::graph_of("#######\n#.....#\n#.....#\n#.....#\n#.....#\n#######\n");
  const auto r = symmetric_eigen(g.laplacian());
  const auto expected = oracle::grid_spectrum(5, 4);
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(r.eigenvalues[static_cast<Eigen::Index>(i)], expected[i], 1e-11);
}

TEST(SymmetricEigen, DiagonalAndRepeatedEigenvalues) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  d.diagonal() << 3, -1, 3, 0;
  const auto r = symmetric_eigen(d);
  EXPECT_EQ(r.eigenvalues, (Eigen::Vector4d(-1, 0, 3, 3)));
  expect_decomposition(d, r, 1e-14);
  const auto id = symmetric_eigen(Eigen::MatrixXd::Identity(5, 5));
  expect_decomposition(Eigen::MatrixXd::Identity(5, 5), id, 1e-14);
}

TEST(SymmetricEigen, Deterministic) {
  const auto a = random_symmetric(40, 9);
  const auto r1 = symmetric_eigen(a), r2 = symmetric_eigen(a);
  EXPECT_EQ(r1.eigenvalues, r2.eigenvalues);
  EXPECT_EQ(r1.eigenvectors, r2.eigenvectors);
}

TEST(SymmetricEigen, RejectsBadInput) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 2.1, 1;
  try {
    symmetric_eigen(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
  try {
    symmetric_eigen(Eigen::MatrixXd(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
  try {
    symmetric_eigen(Eigen::MatrixXd(0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionOutOfRange);
  }
}

TEST(SymmetricEigen, ToleratesRoundoffAsymmetry) {
  auto a = random_symmetric(6, 3);
  a(0, 1) += 1e-15;
  EXPECT_NO_THROW(symmetric_eigen(a));
}
