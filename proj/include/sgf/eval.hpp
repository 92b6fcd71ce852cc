#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgf/community.hpp"
#include "sgf/forge.hpp"
#include "sgf/graph.hpp"

namespace sgf {

// Undefined ratios (zero denominator, zero variance, edgeless output) are
// std::nullopt and print as "NA".
using Metric = std::optional<double>;

struct MetricsReport {
  Metric modularity_ratio;        // Q*_out / Q*_in
  Metric partition_number_ratio;  // m_out / m_in
  Metric clustering_ratio;        // C_out / C_in
  Metric degree_correlation;      // Pearson r of index-aligned degrees
  std::map<std::string, Metric> attribute_modularity_ratios;  // Q_out / Q_in per attribute

  // Raw inputs to the ratios.
  Metric q_in, q_out;
  int m_in = 0, m_out = 0;
  double clustering_in = 0.0, clustering_out = 0.0;
};

// Everything compare() needs from the input graph, computed once.
struct InputProfile {
  Graph graph;
  Metric q_star;  // nullopt for an edgeless graph
  Partition communities;
  double clustering = 0.0;
  std::map<std::string, Metric> attribute_q;

  InputProfile(const Graph& g, std::uint64_t louvain_seed);
};

MetricsReport compare(const InputProfile& input, const Graph& output, std::uint64_t rng_seed);
MetricsReport compare(const Graph& input, const Graph& output, std::uint64_t rng_seed);

Metric pearson(const std::vector<double>& x, const std::vector<double>& y);

// ---- experiment harness -------------------------------------------------

struct Strategy {
  enum class Kind { sgf, dcsbm, trajanovski };
  Kind kind = Kind::sgf;
  double alpha = 0.9;
  NormalizationRule rule = NormalizationRule::truncate();
  Transformation transformation = Transformation::modularity;

  // "sgf:<alpha>", "dcsbm" or "trajanovski".
  static Strategy parse(std::string_view text);
  std::string id() const;
};

struct Dataset {
  std::string id;
  std::vector<Graph> graphs;
};

struct RunRecord {
  std::size_t strategy = 0, dataset = 0, graph = 0, run = 0;
  std::optional<MetricsReport> metrics;  // nullopt when the strategy failed
  std::string failure;
};

struct Summary {
  Metric mean, std, ci99;
  std::size_t runs = 0;  // defined values aggregated
};

struct ExperimentRow {
  std::string strategy;
  std::string dataset;
  std::vector<std::pair<std::string, Summary>> metrics;  // canonical order
  std::size_t failures = 0;
  std::size_t attempts = 0;
};

// Sub-seed of one run; identical for serial and parallel schedules.
std::uint64_t run_seed(std::uint64_t master, const std::string& strategy, const std::string& dataset,
                       std::size_t graph, std::size_t run);

// Mean, sample standard deviation and normal-approximation 99% half-width
// 2.576 * std / sqrt(runs).
Summary summarize(const std::vector<double>& values);

std::vector<RunRecord> run_experiment_records(const std::vector<Strategy>& strategies,
                                              const std::vector<Dataset>& datasets,
                                              std::size_t runs_per_pair, std::uint64_t rng_seed);

std::vector<ExperimentRow> aggregate(const std::vector<Strategy>& strategies,
                                     const std::vector<Dataset>& datasets,
                                     const std::vector<RunRecord>& records);

std::vector<ExperimentRow> run_experiment(const std::vector<Strategy>& strategies,
                                          const std::vector<Dataset>& datasets,
                                          std::size_t runs_per_pair, std::uint64_t rng_seed);

// Header "strategy,dataset,metric,mean,std,ci99,runs". The failure count of
// each row is emitted as metric "failures" with runs = attempts.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

// ---- normalization study ------------------------------------------------

struct StudyInput {
  std::string id;
  std::string family;
  Graph graph;
};

struct NormalizationRow {
  std::string graph, family;
  double alpha = 0.0;
  std::string rule;
  double dist_spectral = 0.0;  // ||A - A~||_2
  Metric dist_normed;          // ||A - norm(A~)||_2, nullopt for a degenerate scale range
  Metric entropy;              // normalized entropy of norm(A~)
};

// Adjacency-mode pipeline, one row per (graph, alpha, rule).
std::vector<NormalizationRow> normalization_study(const std::vector<StudyInput>& inputs,
                                                  const std::vector<double>& alphas,
                                                  const std::vector<NormalizationRule>& rules);

// Header "graph,family,alpha,rule,dist_spectral,dist_normed,entropy".
std::string normalization_csv(const std::vector<NormalizationRow>& rows);

// ---- de-anonymization ---------------------------------------------------

struct AttackConfig {
  double seed_fraction = 0.05;
  std::uint64_t rng_seed = 0;
};

struct AttackResult {
  double identification_rate = 0.0;  // correct / non-seed nodes (1 if none)
  double baseline_rate = 0.0;        // random-guess rate 1/(n - seeds)
  std::size_t seeds = 0;
  std::size_t correct = 0;
};

// Distance-vector attack: ceil(f*n) nodes chosen uniformly are known;
// every other node is described by its hop distances to them (unreachable
// = n) and nodes are paired greedily by ascending Euclidean distance
// between descriptions, each node used once; ties broken at random.
AttackResult dv_attack(const Graph& original, const Graph& anonymized, const AttackConfig& cfg);

// The same attack with an explicit seed set (distinct node ids).
AttackResult dv_attack_with_seeds(const Graph& original, const Graph& anonymized,
                                  std::span<const NodeId> seeds, std::uint64_t tie_seed);

// Hop distances from `source`; unreachable nodes get `unreachable`.
std::vector<int> bfs_distances(const Graph& g, NodeId source, int unreachable);

// ---- privacy / utility sweep --------------------------------------------

struct SweepRow {
  double alpha = 0.0;
  Summary modularity_ratio;
  double entropy = 0.0;  // normalized entropy of the expected matrix
  Summary attack_rate;
  double baseline_rate = 0.0;
};

// For each alpha: `runs` SGF draws, each compared against the input and
// attacked with dv_attack.
std::vector<SweepRow> alpha_sweep(const Graph& input, const std::vector<double>& alphas,
                                  const NormalizationRule& rule, Transformation t, std::size_t runs,
                                  double seed_fraction, std::uint64_t rng_seed);

// Header "alpha,modularity_ratio,modularity_ratio_ci99,entropy,attack_rate,
// attack_rate_ci99,baseline_rate,runs".
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Shortest round-trip decimal form; "NA" for nullopt or non-finite values.
std::string format_number(double x);
std::string format_metric(const Metric& x);

// "a:b:s" inclusive grid or a comma list of decimals; values rounded to 1e-9.
std::vector<double> parse_alpha_grid(std::string_view text);

}  // namespace sgf
