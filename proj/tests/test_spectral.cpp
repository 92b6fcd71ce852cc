#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sgf/error.hpp"
#include "sgf/generators.hpp"
#include "sgf/spectral.hpp"

namespace sgf {
namespace {

RealMatrix random_symmetric(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  RealMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

Graph triangle() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}};
  return Graph(3, e);
}

TEST(SpectralTest, ModularityMatrixOfTriangle) {
  const RealMatrix b = modularity_matrix(triangle());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(b(i, j), i == j ? -2.0 / 3 : 1.0 / 3, 1e-15);
}

TEST(SpectralTest, ModularityMatrixOfSingleEdge) {
  const std::vector<Edge> e{{0, 1}};
  const RealMatrix b = modularity_matrix(Graph(2, e));
  EXPECT_DOUBLE_EQ(b(0, 0), -0.5);
  EXPECT_DOUBLE_EQ(b(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(b(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(b(1, 1), -0.5);
}

TEST(SpectralTest, ModularityMatrixOfEmptyGraphThrows) {
  EXPECT_THROW(modularity_matrix(Graph(4, {})), DegenerateError);
}

TEST(SpectralTest, ModularityMatrixRowsSumToZero) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RealMatrix b = modularity_matrix(erdos_renyi(40, 0.15, seed));
    EXPECT_LT(b.rowwise().sum().cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_TRUE(is_symmetric(b));
  }
}

TEST(SpectralTest, DiagonalOrderedByModulus) {
  RealMatrix m = RealMatrix::Zero(3, 3);
  m.diagonal() << 2, -3, 1;
  const auto eig = eigendecompose(m);
  EXPECT_NEAR(eig.values[0], -3, 1e-12);
  EXPECT_NEAR(eig.values[1], 2, 1e-12);
  EXPECT_NEAR(eig.values[2], 1, 1e-12);
}

TEST(SpectralTest, EqualModulusPutsPositiveFirst) {
  RealMatrix m = RealMatrix::Zero(4, 4);
  m.diagonal() << -2, 2, 1, -1;
  const auto eig = eigendecompose(m);
  EXPECT_NEAR(eig.values[0], 2, 1e-12);
  EXPECT_NEAR(eig.values[1], -2, 1e-12);
  EXPECT_NEAR(eig.values[2], 1, 1e-12);
  EXPECT_NEAR(eig.values[3], -1, 1e-12);
}

TEST(SpectralTest, ZeroMatrixHasZeroSpectrum) {
  const auto eig = eigendecompose(RealMatrix::Zero(3, 3));
  EXPECT_EQ(eig.values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LT((eig.vectors.transpose() * eig.vectors - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SpectralTest, TriangleSpectrumMatchesCharacteristicPolynomial) {
  const RealMatrix b = modularity_matrix(triangle());
  const auto roots = oracle::char_poly_roots_3x3(oracle::to_nested(b));
  auto values = eigendecompose(b).values;
  std::vector<double> got(values.data(), values.data() + values.size());
  std::sort(got.begin(), got.end());
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[static_cast<std::size_t>(i)], roots[static_cast<std::size_t>(i)], 1e-7);
  // B of K3 = J/3 - I: eigenvalues -1, -1, 0.
  EXPECT_NEAR(got[0], -1.0, 1e-12);
  EXPECT_NEAR(got[1], -1.0, 1e-12);
  EXPECT_NEAR(got[2], 0.0, 1e-12);
}

TEST(SpectralTest, RejectsNonSymmetric) {
  RealMatrix m = RealMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigendecompose(m), ValidationError);
}

TEST(SpectralTest, DecompositionInvariants) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RealMatrix m = random_symmetric(20, seed);
    const auto eig = eigendecompose(m);
    for (Eigen::Index i = 0; i + 1 < eig.order(); ++i)
      EXPECT_GE(std::abs(eig.values[i]), std::abs(eig.values[i + 1]));
    for (Eigen::Index c = 0; c < eig.order(); ++c) {
      EXPECT_NEAR(eig.vectors.col(c).norm(), 1.0, 1e-9);
      Eigen::Index arg;
      eig.vectors.col(c).cwiseAbs().maxCoeff(&arg);
      EXPECT_GT(eig.vectors(arg, c), 0.0);
    }
    const RealMatrix rebuilt = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    EXPECT_LT((rebuilt - m).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(SpectralTest, EigenvaluesMatchJacobiOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RealMatrix m = random_symmetric(12, 100 + seed);
    auto values = eigendecompose(m).values;
    std::vector<double> got(values.data(), values.data() + values.size());
    std::sort(got.begin(), got.end());
    const auto want = oracle::jacobi_eigenvalues(oracle::to_nested(m));
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
  }
}

TEST(SpectralTest, RetainedRank) {
  EXPECT_EQ(Alpha(0.3).retained_rank(10), 3);
  EXPECT_EQ(Alpha(0.31).retained_rank(10), 4);
  EXPECT_EQ(Alpha(0.0).retained_rank(10), 0);
  EXPECT_EQ(Alpha(1.0).retained_rank(10), 10);
  EXPECT_EQ(Alpha(0.5).retained_rank(3), 2);
  EXPECT_EQ(Alpha(0.7).retained_rank(10), 7);
}

TEST(SpectralTest, AlphaOutOfRangeThrows) {
  EXPECT_THROW(Alpha(-0.01), ValidationError);
  EXPECT_THROW(Alpha(1.01), ValidationError);
  EXPECT_THROW(Alpha(std::nan("")), ValidationError);
}

TEST(SpectralTest, FullRankReconstructs) {
  const RealMatrix m = random_symmetric(15, 7);
  const auto eig = eigendecompose(m);
  EXPECT_LT((low_rank_approx(eig, Alpha(1.0)) - m).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_EQ(approx_error_bound(eig, Alpha(1.0)), 0.0);
}

TEST(SpectralTest, ZeroAlphaGivesZeroMatrix) {
  const auto eig = eigendecompose(random_symmetric(6, 3));
  EXPECT_EQ(low_rank_approx(eig, Alpha(0.0)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SpectralTest, DiagonalHalfRank) {
  RealMatrix m = RealMatrix::Zero(2, 2);
  m.diagonal() << 3, 1;
  const auto eig = eigendecompose(m);
  const RealMatrix approx = low_rank_approx(eig, Alpha(0.5));
  EXPECT_NEAR(approx(0, 0), 3, 1e-12);
  EXPECT_NEAR(approx(1, 1), 0, 1e-12);
  EXPECT_NEAR(approx(0, 1), 0, 1e-12);
  EXPECT_NEAR(approx_error_bound(eig, Alpha(0.5)), 1.0, 1e-12);
}

TEST(SpectralTest, ErrorBoundMatchesPowerIterationResidual) {
  const RealMatrix m = random_symmetric(10, 42);
  const auto eig = eigendecompose(m);
  const RealMatrix residual = m - low_rank_approx(eig, Alpha(0.5));
  EXPECT_NEAR(approx_error_bound(eig, Alpha(0.5)), oracle::power_iteration_norm(oracle::to_nested(residual)),
              1e-8);
}

TEST(SpectralTest, ErrorBoundEqualsResidualNormOnGraphs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RealMatrix b = modularity_matrix(erdos_renyi(30, 0.2, seed));
    const auto eig = eigendecompose(b);
    for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const RealMatrix residual = b - low_rank_approx(eig, Alpha(a));
      EXPECT_NEAR(approx_error_bound(eig, Alpha(a)), oracle::spectral_norm(oracle::to_nested(residual)), 1e-8);
    }
  }
}

TEST(SpectralTest, ErrorBoundNonIncreasingInAlpha) {
  const auto eig = eigendecompose(random_symmetric(25, 9));
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 20; ++i) {
    const double e = approx_error_bound(eig, Alpha(i / 20.0));
    EXPECT_LE(e, prev);
    prev = e;
  }
}

TEST(SpectralTest, LowRankApproxIsSymmetric) {
  const auto eig = eigendecompose(random_symmetric(30, 5));
  for (double a : {0.1, 0.5, 0.9}) EXPECT_TRUE(is_symmetric(low_rank_approx(eig, Alpha(a))));
}

}  // namespace
}  // namespace sgf
