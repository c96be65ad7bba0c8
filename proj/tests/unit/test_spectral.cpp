#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "spectral_reach/error.hpp"
#include "spectral_reach/spectral.hpp"

using namespace spectral_reach;

namespace {

SpectralBasis basis_of(const std::string& text) { return spectral_basis(fixtures::graph_of(text)); }

}  // namespace

TEST(EigSym, K2SignFixed) {
  const auto b = basis_of(fixtures::kK2);
  EXPECT_NEAR(b.eigenvalues[0], 0.0, 1e-15);
  EXPECT_NEAR(b.eigenvalues[1], 2.0, 1e-15);
  EXPECT_NEAR(b.eigenvectors(0, 1), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.eigenvectors(1, 1), -1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(b.sign_convention, "max-abs-positive");
}

TEST(EigSym, BasisInvariantsOnBundledMaps) {
  for (auto name : {"k2", "p3", "c4", "tworoom", "fourroom", "discrete_a"}) {
    const auto g = build_graph(fixtures::bundled(name));
    const auto b = spectral_basis(g);
    const auto n = static_cast<Eigen::Index>(g.size());
    const auto l = g.laplacian();
    EXPECT_NEAR(b.eigenvalues[0], 0.0, 1e-9) << name;
    EXPECT_LE((b.eigenvectors.transpose() * b.eigenvectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-9);
    for (Eigen::Index i = 0; i < n; ++i) {
      EXPECT_LE((l * b.eigenvectors.col(i) - b.eigenvalues[i] * b.eigenvectors.col(i)).norm(), 1e-8);
      const auto col = b.eigenvectors.col(i);
      Eigen::Index arg = 0;
      const double top = col.cwiseAbs().maxCoeff(&arg);
      Eigen::Index first = 0;
      while (std::abs(col[first]) < top - 1e-10) ++first;
      EXPECT_GT(col[first], 0.0) << name << " column " << i;
    }
    const double constant = 1.0 / std::sqrt(static_cast<double>(n));
    EXPECT_LE((b.eigenvectors.col(0).array() - constant).abs().maxCoeff(), 1e-9) << name;
    EXPECT_GE(b.eigenvalues.minCoeff(), -1e-10);
  }
}

TEST(EigSym, IdenticalAcrossCalls) {
  const auto l = build_graph(fixtures::bundled("fourroom")).laplacian();
  const auto a = eig_sym(l), b = eig_sym(l);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(LapRep, Examples) {
  const auto k2 = laprep(basis_of(fixtures::kK2), 2);
  ASSERT_EQ(k2.vectors.cols(), 1);
  EXPECT_NEAR(k2.vectors(0, 0), 0.70710678118654752, 1e-15);
  EXPECT_NEAR(k2.vectors(1, 0), -0.70710678118654752, 1e-15);

  const auto p3 = laprep(basis_of(fixtures::kP3), 2);
  EXPECT_NEAR(p3.vectors(0, 0), 0.70710678118654752, 1e-12);
  EXPECT_NEAR(p3.vectors(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(p3.vectors(2, 0), -0.70710678118654752, 1e-12);

  const auto full = laprep(spectral_basis(build_graph(fixtures::bundled("tworoom"))), 9);
  EXPECT_EQ(full.vectors.cols(), 8);
  EXPECT_LE(full.vectors.colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LapRep, DimensionRange) {
  const auto b = basis_of(fixtures::kP3);
  for (int d : {1, 4, -2}) {
    try {
      laprep(b, d);
      FAIL() << d;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DimensionOutOfRange);
    }
  }
}

TEST(RaLapRep, Examples) {
  const auto k2 = ra_laprep(basis_of(fixtures::kK2), 2);
  EXPECT_NEAR(k2.vectors(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(k2.vectors(1, 0), -0.5, 1e-15);
  EXPECT_NEAR(embed_dist(k2, 0, 1), 1.0, 1e-15);

  const auto p3 = ra_laprep(basis_of(fixtures::kP3), 3);
  EXPECT_NEAR(embed_dist(p3, 0, 1), 1.0, 1e-12);
  EXPECT_NEAR(embed_dist(p3, 1, 2), 1.0, 1e-12);
  EXPECT_NEAR(embed_dist(p3, 0, 2), std::sqrt(2.0), 1e-12);
  // V_G * dist^2 = V_G * R_eff with R_eff from the grounded Laplacian.
  const auto p3g = fixtures::graph_of(fixtures::kP3);
  EXPECT_NEAR(4.0 * std::pow(embed_dist(p3, 0, 2), 2), 4.0 * oracle::grounded_resistance(p3g.laplacian(), 0, 2), 1e-12);

  const auto c4g = fixtures::graph_of(fixtures::kC4);
  const auto c4 = ra_laprep(spectral_basis(c4g), 4);
  EXPECT_NEAR(embed_dist(c4, 0, 1), std::sqrt(6.0 / 8.0), 1e-12);
  EXPECT_NEAR(oracle::grounded_resistance(c4g.laplacian(), 0, 1), 0.75, 1e-12);
}

TEST(RaLapRep, DisconnectedThrows) {
  try {
    ra_laprep(basis_of(fixtures::kSplit), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GraphDisconnected);
  }
}

TEST(EmbedDist, SymmetricWithZeroDiagonal) {
  const auto e = ra_laprep(spectral_basis(build_graph(fixtures::bundled("tworoom"))), 5);
  for (std::size_t s = 0; s < e.states(); ++s) {
    EXPECT_EQ(embed_dist(e, s, s), 0.0);
    for (std::size_t t = 0; t < e.states(); ++t) EXPECT_EQ(embed_dist(e, s, t), embed_dist(e, t, s));
  }
}

TEST(Truncation, P3Examples) {
  const auto b = basis_of(fixtures::kP3);
  EXPECT_NEAR(truncation_tail(b, 4, 2, 0, 1), 2.0, 1e-12);
  EXPECT_NEAR(truncated_commute(b, 4, 2, 0, 1), 2.0, 1e-12);
  EXPECT_NEAR(truncation_tail(b, 4, 2, 0, 2), 0.0, 1e-12);
  EXPECT_NEAR(truncation_tail(b, 4, 3, 0, 2), 0.0, 0.0);
}

TEST(Truncation, BoundHolds) {
  const auto g = build_graph(fixtures::bundled("tworoom"));
  const auto b = spectral_basis(g);
  for (int d = 2; d <= 9; ++d) {
    const double bound = truncation_bound(b, g.volume(), d);
    for (std::size_t s = 0; s < 9; ++s) {
      for (std::size_t t = 0; t < 9; ++t) EXPECT_LE(truncation_tail(b, g.volume(), d, s, t), bound + 1e-12);
    }
  }
  EXPECT_EQ(truncation_bound(b, g.volume(), 9), 0.0);
}

TEST(EmbeddingCsv, RoundTrip) {
  const auto g = build_graph(fixtures::bundled("tworoom"));
  auto e = ra_laprep(spectral_basis(g), 4);
  e.coords = g.coords();
  const auto csv = embedding_to_csv(e);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "state_index,x,y,e2,e3,e4");
  const auto back = embedding_from_csv(csv, EmbeddingKind::RaLapRep);
  EXPECT_EQ(back.vectors, e.vectors);
  EXPECT_EQ(back.d, 4);
  EXPECT_EQ(back.coords, e.coords);
  EXPECT_THROW(embedding_from_csv("state_index,x,y,e2\n0,1,1,abc\n"), Error);
}

TEST(BasisJson, CarriesSignConvention) {
  const auto json = basis_to_json(basis_of(fixtures::kK2));
  EXPECT_NE(json.find("\"sign_convention\":\"max-abs-positive\""), std::string::npos) << json;
}
