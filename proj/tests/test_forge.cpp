#include <gtest/gtest.h>

#include <cmath>

#include "sgf/community.hpp"
#include "sgf/error.hpp"
#include "sgf/forge.hpp"
#include "sgf/generators.hpp"

namespace sgf {
namespace {

Graph triangle() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}};
  return Graph(3, e);
}

RealMatrix constant_offdiag(Eigen::Index n, double v) {
  RealMatrix p = RealMatrix::Constant(n, n, v);
  p.diagonal().setZero();
  return p;
}

TEST(ForgeTest, BackTransformInvertsModularityMatrix) {
  const Graph g = erdos_renyi(20, 0.3, 1);
  const RealMatrix a = back_transform(modularity_matrix(g), degree_vector(g), Transformation::modularity);
  EXPECT_LT((a - g.adjacency()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ForgeTest, BackTransformAdjacencyModeIsIdentity) {
  const Graph g = erdos_renyi(10, 0.3, 2);
  const RealMatrix m = RealMatrix::Random(10, 10);
  EXPECT_EQ(back_transform(m, degree_vector(g), Transformation::adjacency), m);
}

TEST(ForgeTest, BackTransformOfZeroOnTriangle) {
  const RealMatrix a = back_transform(RealMatrix::Zero(3, 3), degree_vector(triangle()), Transformation::modularity);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(a(i, j), 2.0 / 3, 1e-15);
}

TEST(ForgeTest, BackTransformRejectsEdgelessModularity) {
  EXPECT_THROW(back_transform(RealMatrix::Zero(2, 2), degree_vector(Graph(2, {})), Transformation::modularity),
               DegenerateError);
}

TEST(ForgeTest, ScalarRules) {
  EXPECT_EQ(truncate(1.3), 1.0);
  EXPECT_EQ(truncate(-0.2), 0.0);
  EXPECT_EQ(truncate(0.42), 0.42);
  EXPECT_EQ(logistic(0.5, 6.0), 0.5);
  EXPECT_NEAR(logistic(1.5, 6.0), 1.0 / (1.0 + std::exp(-6.0)), 1e-15);
  EXPECT_NEAR(logistic(1.5, 6.0), 0.99753, 1e-5);
}

TEST(ForgeTest, LogisticSteepnessValidated) {
  EXPECT_THROW(NormalizationRule::logistic(1.9), ValidationError);
  EXPECT_THROW(NormalizationRule::logistic(10.1), ValidationError);
  EXPECT_NO_THROW(NormalizationRule::logistic(2.0));
  EXPECT_NO_THROW(NormalizationRule::logistic(10.0));
  EXPECT_THROW(NormalizationRule::parse("softmax"), ValidationError);
  EXPECT_EQ(NormalizationRule::parse("scale").kind, NormalizationRule::Kind::scale);
}

TEST(ForgeTest, NormalizeOutputInRangeSymmetricZeroDiagonal) {
  RealMatrix a = RealMatrix::Random(12, 12) * 2.0;
  a = (a + a.transpose()).eval() / 2.0;
  for (const auto& rule : {NormalizationRule::truncate(), NormalizationRule::scale(), NormalizationRule::logistic()}) {
    const auto p = normalize(a, rule);
    EXPECT_GE(p.matrix().minCoeff(), 0.0);
    EXPECT_LE(p.matrix().maxCoeff(), 1.0);
    EXPECT_TRUE(p.matrix().isApprox(p.matrix().transpose(), 0.0));
    EXPECT_EQ(p.matrix().diagonal().cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(ForgeTest, ScaleUsesOffDiagonalRange) {
  RealMatrix a(3, 3);
  a << 100, 1, 3, 1, -50, 2, 3, 2, 7;
  const auto p = normalize(a, NormalizationRule::scale());
  EXPECT_DOUBLE_EQ(p(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(p(0, 2), 1.0);
  EXPECT_DOUBLE_EQ(p(1, 2), 0.5);
}

TEST(ForgeTest, ScaleDegenerateRangeThrows) {
  EXPECT_THROW(normalize(constant_offdiag(4, 0.3), NormalizationRule::scale()), DegenerateError);
}

TEST(ForgeTest, ProbabilityMatrixValidates) {
  RealMatrix p = constant_offdiag(3, 0.5);
  p(0, 1) = 1.5;
  EXPECT_THROW(ProbabilityMatrix{p}, ValidationError);
  RealMatrix q = constant_offdiag(3, 0.5);
  q(0, 0) = 0.1;
  EXPECT_THROW(ProbabilityMatrix{q}, ValidationError);
  RealMatrix r = constant_offdiag(3, 0.5);
  r(0, 1) = 0.6;
  EXPECT_THROW(ProbabilityMatrix{r}, ValidationError);
}

TEST(ForgeTest, SampleCertainAndImpossible) {
  EXPECT_EQ(sample_bernoulli(ProbabilityMatrix(constant_offdiag(6, 1.0)), 3).edge_count(), 15u);
  EXPECT_EQ(sample_bernoulli(ProbabilityMatrix(constant_offdiag(6, 0.0)), 3).edge_count(), 0u);
}

TEST(ForgeTest, SampleFrequencyPerDyad) {
  const int n = 30, draws = 2000;
  const ProbabilityMatrix p(constant_offdiag(n, 0.5));
  RealMatrix counts = RealMatrix::Zero(n, n);
  for (int d = 0; d < draws; ++d) counts += sample_bernoulli(p, static_cast<std::uint64_t>(d)).adjacency();
  counts /= draws;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) EXPECT_NEAR(counts(i, j), 0.5, 0.04);
}

TEST(ForgeTest, SampleIsSeedDeterministic) {
  const ProbabilityMatrix p(constant_offdiag(40, 0.3));
  EXPECT_EQ(sample_bernoulli(p, 5), sample_bernoulli(p, 5));
  EXPECT_NE(sample_bernoulli(p, 5), sample_bernoulli(p, 6));
}

TEST(ForgeTest, EntropyOfDeterministicMatrix) {
  const auto r = normalized_entropy(ProbabilityMatrix(erdos_renyi(20, 0.3, 1).adjacency()));
  EXPECT_EQ(r.raw_bits, 0.0);
  EXPECT_EQ(r.normalized, 0.0);
}

TEST(ForgeTest, EntropyOfUniformHalf) {
  for (int n : {2, 5, 17, 40}) {
    const auto r = normalized_entropy(ProbabilityMatrix(constant_offdiag(n, 0.5)));
    const double dyads = n * (n - 1) / 2.0;
    EXPECT_EQ(r.raw_bits, dyads);
    EXPECT_EQ(r.normalizer, 2.0 * dyads);
    EXPECT_EQ(r.normalized, 0.5);
    EXPECT_EQ(r.density_weighted, 1.0);
  }
}

TEST(ForgeTest, EntropyHandExample) {
  RealMatrix p = RealMatrix::Zero(3, 3);
  p(0, 1) = p(1, 0) = 0.5;
  p(1, 2) = p(2, 1) = 1.0;
  const auto r = normalized_entropy(ProbabilityMatrix(p));
  EXPECT_DOUBLE_EQ(r.raw_bits, 1.0);
  EXPECT_DOUBLE_EQ(r.density, 0.5);
  EXPECT_DOUBLE_EQ(r.normalized, 1.0 / 6.0);
}

TEST(ForgeTest, EntropyDegenerateDensity) {
  EXPECT_EQ(normalized_entropy(ProbabilityMatrix(constant_offdiag(5, 1.0))).normalized, 0.0);
  EXPECT_EQ(normalized_entropy(ProbabilityMatrix(constant_offdiag(5, 0.0))).normalized, 0.0);
}

TEST(ForgeTest, FullAlphaTruncateReproducesInput) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = erdos_renyi(50, 0.1, seed);
    EXPECT_EQ(sgf(g, {Alpha(1.0), NormalizationRule::truncate(), seed, Transformation::modularity}), g);
    EXPECT_EQ(sgf(g, {Alpha(1.0), NormalizationRule::truncate(), seed, Transformation::adjacency}), g);
  }
}

TEST(ForgeTest, ExpectedMatrixAtFullAlpha) {
  const Graph g = erdos_renyi(30, 0.2, 8);
  const auto p = expected_matrix(g, {Alpha(1.0), NormalizationRule::truncate(), 0, Transformation::modularity});
  EXPECT_LT((p.matrix() - g.adjacency()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(normalized_entropy(p).normalized, 1e-9);
}

TEST(ForgeTest, ExpectedMatrixOfTriangleAtZeroAlpha) {
  const auto p = expected_matrix(triangle(), {Alpha(0.0), NormalizationRule::truncate(), 0, Transformation::modularity});
  EXPECT_NEAR(p(0, 1), 2.0 / 3, 1e-15);
  EXPECT_NEAR(p(0, 2), 2.0 / 3, 1e-15);
  EXPECT_NEAR(p(1, 2), 2.0 / 3, 1e-15);
}

TEST(ForgeTest, SingleEdgeZeroAlphaIsNearlyEmpty) {
  const std::vector<Edge> e{{0, 1}};
  const Graph g(20, e);
  const auto p = expected_matrix(g, {Alpha(0.0), NormalizationRule::truncate(), 0, Transformation::modularity});
  EXPECT_NEAR(p(0, 1), 0.5, 1e-15);
  EXPECT_EQ(p.matrix().sum(), 1.0);
  std::size_t edges = 0;
  for (std::uint64_t s = 0; s < 50; ++s)
    edges += sgf(g, {Alpha(0.0), NormalizationRule::truncate(), s, Transformation::modularity}).edge_count();
  EXPECT_LE(edges, 50u);
}

TEST(ForgeTest, EdgelessInputRejectedInModularityMode) {
  EXPECT_THROW(sgf(Graph(5, {}), {}), DegenerateError);
  EXPECT_EQ(sgf(Graph(5, {}), {Alpha(0.5), NormalizationRule::truncate(), 0, Transformation::adjacency}).edge_count(),
            0u);
}

TEST(ForgeTest, OutputKeepsNodeCountAndAttributes) {
  const Graph g = erdos_renyi(15, 0.3, 2).with_attribute("a", std::vector<std::string>(15, "x"));
  const Graph out = sgf(g, {Alpha(0.5), NormalizationRule::truncate(), 9, Transformation::modularity});
  EXPECT_EQ(out.size(), 15);
  EXPECT_EQ(out.attributes(), g.attributes());
}

TEST(ForgeTest, PlantedGraphHighAlphaKeepsModularity) {
  PlantedPartitionConfig cfg;
  cfg.n = 128;
  cfg.m = 2;
  cfg.p_in = 0.2;
  cfg.p_out = 0.02;
  cfg.rng_seed = 4;
  const Graph g = planted_partition(cfg).graph;
  const double q_in = louvain_maximize(g, 1).modularity;
  double sum = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s)
    sum += louvain_maximize(sgf(g, {Alpha(0.9), NormalizationRule::truncate(), s, Transformation::modularity}), 1)
               .modularity;
  EXPECT_NEAR(sum / 5 / q_in, 1.0, 0.1);
}

TEST(ForgeTest, EntropyNonIncreasingInAlpha) {
  const Graph g = erdos_renyi(60, 0.1, 3);
  const Forge forge(g, Transformation::adjacency);
  double prev = 1.0;
  int increases = 0;
  for (int i = 1; i <= 10; ++i) {
    const double h = normalized_entropy(forge.expected(Alpha(i / 10.0), NormalizationRule::truncate())).normalized;
    if (h > prev) ++increases;
    prev = h;
  }
  EXPECT_LE(increases, 1);
}

TEST(ForgeTest, ParseTransformation) {
  EXPECT_EQ(parse_transformation("adjacency"), Transformation::adjacency);
  EXPECT_EQ(to_string(Transformation::modularity), "modularity");
  EXPECT_THROW(parse_transformation("clique"), ValidationError);
}

}  // namespace
}  // namespace sgf
