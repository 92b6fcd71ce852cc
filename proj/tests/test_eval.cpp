#include <gtest/gtest.h>

#include <cmath>
#include <omp.h>

#include "sgf/error.hpp"
#include "sgf/eval.hpp"
#include "sgf/generators.hpp"

namespace sgf {
namespace {

Graph two_k4() { return planted_partition({8, 2, 1.0, 0.0, 0}).graph; }

Graph path(NodeId n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

TEST(CompareTest, IdentityGivesUnitRatios) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Graph g = planted_partition({60, 3, 0.4, 0.05, s}).graph;
    const auto r = compare(g, g, s);
    EXPECT_EQ(*r.modularity_ratio, 1.0);
    EXPECT_EQ(*r.partition_number_ratio, 1.0);
    EXPECT_EQ(*r.clustering_ratio, 1.0);
    EXPECT_NEAR(*r.degree_correlation, 1.0, 1e-12);
  }
}

TEST(CompareTest, ConstantDegreeIsUndefinedCorrelation) {
  const Graph g = two_k4();
  const auto r = compare(g, g, 0);
  EXPECT_FALSE(r.degree_correlation.has_value());
  EXPECT_EQ(*r.modularity_ratio, 1.0);
}

TEST(CompareTest, EmptyOutput) {
  const Graph g = planted_partition({40, 2, 0.5, 0.05, 1}).graph;
  const auto r = compare(g, Graph(40, {}), 0);
  EXPECT_EQ(*r.clustering_ratio, 0.0);
  EXPECT_FALSE(r.degree_correlation.has_value());
  EXPECT_FALSE(r.modularity_ratio.has_value());
  EXPECT_FALSE(r.partition_number_ratio.has_value());
}

TEST(CompareTest, AttributeRatio) {
  const Graph g = two_k4().with_attribute("block", {"a", "a", "a", "a", "b", "b", "b", "b"});
  const auto r = compare(g, g, 3);
  ASSERT_EQ(r.attribute_modularity_ratios.count("block"), 1u);
  EXPECT_EQ(*r.attribute_modularity_ratios.at("block"), 1.0);
}

TEST(CompareTest, TriangleFreeInputHasUndefinedClusteringRatio) {
  const Graph g = path(10);
  EXPECT_FALSE(compare(g, g, 0).clustering_ratio.has_value());
}

TEST(CompareTest, NodeCountMismatchThrows) {
  EXPECT_THROW(compare(path(4), path(5), 0), ValidationError);
}

TEST(CompareTest, DegreeCorrelationInRange) {
  const Graph a = erdos_renyi(50, 0.1, 1), b = erdos_renyi(50, 0.1, 2);
  const auto r = compare(a, b, 0);
  ASSERT_TRUE(r.degree_correlation.has_value());
  EXPECT_GE(*r.degree_correlation, -1.0);
  EXPECT_LE(*r.degree_correlation, 1.0);
}

TEST(PearsonTest, Basics) {
  EXPECT_NEAR(*pearson({1, 2, 3}, {2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(*pearson({1, 2, 3}, {3, 2, 1}), -1.0, 1e-15);
  EXPECT_FALSE(pearson({1, 1, 1}, {1, 2, 3}).has_value());
}

TEST(SummaryTest, MeanStdCi) {
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(*s.mean, 2.5);
  EXPECT_DOUBLE_EQ(*s.std, std::sqrt(5.0 / 3.0));
  EXPECT_DOUBLE_EQ(*s.ci99, 2.576 * std::sqrt(5.0 / 3.0) / 2.0);
  EXPECT_EQ(s.runs, 4u);
  EXPECT_FALSE(summarize({}).mean.has_value());
  EXPECT_FALSE(summarize({1.0}).std.has_value());
}

TEST(StrategyTest, Parse) {
  EXPECT_EQ(Strategy::parse("sgf:0.9").id(), "sgf:0.9");
  EXPECT_EQ(Strategy::parse("dcsbm").kind, Strategy::Kind::dcsbm);
  EXPECT_EQ(Strategy::parse("trajanovski").id(), "trajanovski");
  EXPECT_THROW(Strategy::parse("sgf:1.5"), ValidationError);
  EXPECT_THROW(Strategy::parse("sgf:x"), ValidationError);
  EXPECT_THROW(Strategy::parse("ergm"), ValidationError);
}

std::vector<Dataset> small_datasets() {
  Dataset d{"planted", {}};
  for (std::uint64_t s = 0; s < 3; ++s) d.graphs.push_back(planted_partition({48, 3, 0.4, 0.03, s}).graph);
  return {d};
}

TEST(ExperimentTest, OneRowWithTwoRuns) {
  const auto rows = run_experiment({Strategy::parse("sgf:0.9")}, {{"one", {two_k4()}}}, 2, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].attempts, 2u);
  EXPECT_EQ(rows[0].metrics[0].first, "modularity_ratio");
  EXPECT_EQ(rows[0].metrics[0].second.runs, 2u);
}

TEST(ExperimentTest, RejectsSingleRun) {
  EXPECT_THROW(run_experiment({Strategy::parse("dcsbm")}, small_datasets(), 1, 0), ValidationError);
}

TEST(ExperimentTest, ParallelMatchesSerial) {
  const std::vector<Strategy> strategies{Strategy::parse("sgf:0.5"), Strategy::parse("dcsbm"),
                                         Strategy::parse("trajanovski")};
  const auto data = small_datasets();
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto serial = experiment_csv(run_experiment(strategies, data, 3, 42));
  omp_set_num_threads(4);
  const auto parallel = experiment_csv(run_experiment(strategies, data, 3, 42));
  omp_set_num_threads(saved);
  EXPECT_EQ(serial, parallel);
}

TEST(ExperimentTest, AggregateFromStoredRecordsIsBitIdentical) {
  const std::vector<Strategy> strategies{Strategy::parse("sgf:0.9"), Strategy::parse("dcsbm")};
  const auto data = small_datasets();
  const auto records = run_experiment_records(strategies, data, 3, 5);
  EXPECT_EQ(experiment_csv(aggregate(strategies, data, records)),
            experiment_csv(run_experiment(strategies, data, 3, 5)));
}

TEST(ExperimentTest, FailuresAreCountedAndExcluded) {
  // A sparse forest cannot host the trajanovski skeleton (l < n - 1).
  const std::vector<Edge> e{{0, 1}, {2, 3}};
  const auto rows = run_experiment({Strategy::parse("trajanovski")}, {{"forest", {Graph(6, e)}}}, 2, 0);
  EXPECT_EQ(rows[0].failures, 2u);
  EXPECT_EQ(rows[0].metrics[0].second.runs, 0u);
  EXPECT_NE(experiment_csv(rows).find("trajanovski,forest,failures,2,0,0,2"), std::string::npos);
}

TEST(ExperimentTest, CsvHeaderAndAttributeMetrics) {
  Dataset d{"attr", {two_k4().with_attribute("g", {"a", "a", "a", "a", "b", "b", "b", "b"})}};
  const auto csv = experiment_csv(run_experiment({Strategy::parse("sgf:1")}, {d}, 2, 0));
  EXPECT_EQ(csv.rfind("strategy,dataset,metric,mean,std,ci99,runs\n", 0), 0u);
  EXPECT_NE(csv.find("sgf:1,attr,attr:g,1,0,0,2"), std::string::npos);
}

TEST(NormalizationStudyTest, FullAlphaTruncateIsExact) {
  const std::vector<StudyInput> in{{"er0", "er", erdos_renyi(40, 0.1, 1)}};
  const auto rows = normalization_study(in, {1.0}, {NormalizationRule::truncate()});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_LT(rows[0].dist_spectral, 1e-9);
  EXPECT_LT(*rows[0].dist_normed, 1e-9);
  EXPECT_LT(*rows[0].entropy, 1e-9);
}

TEST(NormalizationStudyTest, RowCountAndHeader) {
  std::vector<StudyInput> in;
  for (std::uint64_t s = 0; s < 2; ++s) in.push_back({"er" + std::to_string(s), "er", erdos_renyi(30, 0.15, s)});
  const auto rows = normalization_study(
      in, {0.2, 0.6, 1.0}, {NormalizationRule::logistic(), NormalizationRule::truncate(), NormalizationRule::scale()});
  EXPECT_EQ(rows.size(), 2u * 3 * 3);
  EXPECT_EQ(normalization_csv(rows).rfind("graph,family,alpha,rule,dist_spectral,dist_normed,entropy\n", 0), 0u);
}

TEST(NormalizationStudyTest, TruncateCloserThanScaleOnErdosRenyi) {
  std::vector<StudyInput> in;
  for (std::uint64_t s = 0; s < 3; ++s) in.push_back({"er", "er", erdos_renyi(60, 0.075, s)});
  const auto rows = normalization_study(in, {0.3, 0.5, 0.7}, {NormalizationRule::truncate(), NormalizationRule::scale()});
  for (std::size_t i = 0; i < rows.size(); i += 2) EXPECT_LE(*rows[i].dist_normed, *rows[i + 1].dist_normed);
}

TEST(AttackTest, IdenticalGraphsAllSeeds) {
  const Graph g = erdos_renyi(30, 0.2, 1);
  const auto r = dv_attack(g, g, {1.0, 0});
  EXPECT_EQ(r.identification_rate, 1.0);
  EXPECT_EQ(r.seeds, 30u);
}

TEST(AttackTest, PathWithEndpointSeed) {
  const Graph g = path(10);
  const std::vector<NodeId> seeds{0};
  const auto r = dv_attack_with_seeds(g, g, seeds, 0);
  EXPECT_EQ(r.identification_rate, 1.0);
  EXPECT_EQ(r.correct, 9u);
}

TEST(AttackTest, RateInRangeAndSeedCount) {
  const Graph a = erdos_renyi(100, 0.05, 1), b = erdos_renyi(100, 0.05, 2);
  const auto r = dv_attack(a, b, {0.05, 3});
  EXPECT_EQ(r.seeds, 5u);
  EXPECT_GE(r.identification_rate, 0.0);
  EXPECT_LE(r.identification_rate, 1.0);
  EXPECT_DOUBLE_EQ(r.baseline_rate, 1.0 / 95);
}

TEST(AttackTest, IdenticalBeatsResampled) {
  double same = 0, other = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const Graph g = erdos_renyi(80, 0.06, t);
    same += dv_attack(g, g, {0.05, t}).identification_rate;
    other += dv_attack(g, erdos_renyi(80, 0.06, 1000 + t), {0.05, t}).identification_rate;
  }
  EXPECT_GT(same, other);
}

TEST(AttackTest, Validation) {
  EXPECT_THROW(dv_attack(path(3), path(4), {0.5, 0}), ValidationError);
  EXPECT_THROW(dv_attack(path(3), path(3), {0.0, 0}), ValidationError);
  const std::vector<NodeId> dup{1, 1};
  EXPECT_THROW(dv_attack_with_seeds(path(3), path(3), dup, 0), ValidationError);
}

TEST(AttackTest, BfsUnreachableSentinel) {
  const std::vector<Edge> e{{0, 1}};
  EXPECT_EQ(bfs_distances(Graph(3, e), 0, 3), (std::vector<int>{0, 1, 3}));
}

TEST(SweepTest, RowsAndEntropyTrend) {
  const Graph g = planted_partition({60, 3, 0.4, 0.03, 2}).graph;
  const auto rows = alpha_sweep(g, parse_alpha_grid("0.1:1.0:0.1"), NormalizationRule::truncate(),
                                Transformation::modularity, 2, 0.05, 1);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_LT(rows.back().entropy, rows.front().entropy);
  EXPECT_NEAR(rows.back().entropy, 0.0, 1e-12);
  EXPECT_EQ(sweep_csv(rows).rfind(
                "alpha,modularity_ratio,modularity_ratio_ci99,entropy,attack_rate,attack_rate_ci99,baseline_rate,runs\n",
                0),
            0u);
}

TEST(FormatTest, Numbers) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(std::nan("")), "NA");
  EXPECT_EQ(format_metric(std::nullopt), "NA");
}

TEST(FormatTest, AlphaGrid) {
  EXPECT_EQ(parse_alpha_grid("0.1:1.0:0.1"), (std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}));
  EXPECT_EQ(parse_alpha_grid("0.3,0.5,0.9"), (std::vector<double>{0.3, 0.5, 0.9}));
  EXPECT_THROW(parse_alpha_grid("0.5:0.1:0.1"), ValidationError);
  EXPECT_THROW(parse_alpha_grid("0.1:1.2:0.5"), ValidationError);
  EXPECT_THROW(parse_alpha_grid("a,b"), ValidationError);
  EXPECT_THROW(parse_alpha_grid("0.1:1"), ValidationError);
}

}  // namespace
}  // namespace sgf
