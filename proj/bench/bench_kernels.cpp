// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "sgf/forge.hpp"
#include "sgf/generators.hpp"
#include "sgf/kernels.hpp"
#include "sgf/spectral.hpp"

namespace {

using namespace sgf;

struct Fixture {
  Graph graph;
  DegreeVector k;
  EigenDecomposition eig;
  RealMatrix a_tilde;
  RealMatrix p;

  explicit Fixture(NodeId n) {
    PlantedPartitionConfig cfg;
    cfg.n = n;
    cfg.m = 4;
    cfg.p_in = 0.2;
    cfg.p_out = 0.02;
    cfg.rng_seed = 11;
    graph = planted_partition(cfg).graph;
    k = degree_vector(graph);
    eig = eigendecompose(modularity_matrix(graph));
    a_tilde = back_transform(low_rank_approx(eig, Alpha(0.5)), k, Transformation::modularity);
    p = normalize(a_tilde, NormalizationRule::truncate()).matrix();
  }
};

const Fixture& fixture(NodeId n) {
  static std::map<NodeId, Fixture> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Fixture(n)).first;
  return it->second;
}

template <bool Parallel>
void BM_ModularityMatrix(benchmark::State& state) {
  const auto& f = fixture(static_cast<NodeId>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::modularity_matrix(f.graph, f.k)
                                      : kernels::modularity_matrix_serial(f.graph, f.k));
}

template <bool Parallel>
void BM_LowRankSum(benchmark::State& state) {
  const auto& f = fixture(static_cast<NodeId>(state.range(0)));
  const auto rank = Alpha(0.5).retained_rank(f.eig.order());
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::low_rank_sum(f.eig.values, f.eig.vectors, rank)
                                      : kernels::low_rank_sum_serial(f.eig.values, f.eig.vectors, rank));
}

template <bool Parallel>
void BM_ApplyRule(benchmark::State& state) {
  const auto& f = fixture(static_cast<NodeId>(state.range(0)));
  const auto rule = NormalizationRule::logistic(6.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::apply_rule(f.a_tilde, rule)
                                      : kernels::apply_rule_serial(f.a_tilde, rule));
}

template <bool Parallel>
void BM_DyadSums(benchmark::State& state) {
  const auto& f = fixture(static_cast<NodeId>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::dyad_sums(f.p) : kernels::dyad_sums_serial(f.p));
}

template <bool Parallel>
void BM_BernoulliSample(benchmark::State& state) {
  const auto& f = fixture(static_cast<NodeId>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ++seed;
    benchmark::DoNotOptimize(Parallel ? kernels::bernoulli_sample(f.p, seed)
                                      : kernels::bernoulli_sample_serial(f.p, seed));
  }
}

#define SGF_BENCH_PAIR(name)                                                                   \
  BENCHMARK_TEMPLATE(name, false)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime(); \
  BENCHMARK_TEMPLATE(name, true)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime()

SGF_BENCH_PAIR(BM_ModularityMatrix);
SGF_BENCH_PAIR(BM_LowRankSum);
SGF_BENCH_PAIR(BM_ApplyRule);
SGF_BENCH_PAIR(BM_DyadSums);
SGF_BENCH_PAIR(BM_BernoulliSample);

}  // namespace

BENCHMARK_MAIN();
