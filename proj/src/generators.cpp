#include "sgf/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sgf/error.hpp"
#include "sgf/rng.hpp"

namespace sgf {

namespace {

constexpr int kMatchRetries = 100;

// Number of failures before the first success, success probability p.
std::int64_t geometric_failures(Rng& rng, double p) {
  if (p >= 1.0) return 0;
  const double u = 1.0 - uniform01(rng);  // (0, 1]
  return static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-p)));
}

class EdgeSet {
 public:
  bool contains(NodeId u, NodeId v) const { return set_.count(key(u, v)) != 0; }
  void insert(NodeId u, NodeId v) { set_.insert(key(u, v)); }
  void erase(NodeId u, NodeId v) { set_.erase(key(u, v)); }
  std::vector<Edge> sorted() const { return {set_.begin(), set_.end()}; }

 private:
  static Edge key(NodeId u, NodeId v) { return u < v ? Edge{u, v} : Edge{v, u}; }
  std::set<Edge> set_;
};

// Pairs stubs uniformly at random subject to `valid`. A stub that finds no
// partner in kMatchRetries draws is paired with the last open stub through a
// rewire of an edge already placed from the same pool. A stub that still has
// no partner is discarded, so realised degrees can fall short of the targets.
template <class Valid>
void match_stubs(std::vector<NodeId> stubs, Valid valid, EdgeSet& edges, Rng& rng) {
  std::vector<Edge> placed;
  sgf::shuffle(stubs.begin(), stubs.end(), rng);
  auto ok = [&](NodeId u, NodeId v) { return u != v && valid(u, v) && !edges.contains(u, v); };

  while (stubs.size() >= 2) {
    const NodeId a = stubs.back();
    stubs.pop_back();
    bool done = false;
    for (int t = 0; t < kMatchRetries && !done; ++t) {
      const auto idx = uniform_index(rng, stubs.size());
      const NodeId b = stubs[idx];
      if (ok(a, b)) {
        edges.insert(a, b);
        placed.emplace_back(a, b);
        stubs[idx] = stubs.back();
        stubs.pop_back();
        done = true;
      }
    }
    if (done) continue;

    const NodeId b = stubs.back();
    stubs.pop_back();
    for (int t = 0; t < kMatchRetries && !done && !placed.empty(); ++t) {
      const auto idx = uniform_index(rng, placed.size());
      auto [x, y] = placed[idx];
      if (uniform_index(rng, 2) == 1) std::swap(x, y);
      if (x == b || y == a || !ok(a, x) || !ok(b, y) || (a == b && x == y)) continue;
      if (a == y || b == x) continue;
      edges.erase(x, y);
      edges.insert(a, x);
      edges.insert(b, y);
      placed[idx] = {a, x};
      placed.emplace_back(b, y);
      done = true;
    }
    if (!done) stubs.push_back(b);
  }
}

}  // namespace

PlantedGraph planted_partition(const PlantedPartitionConfig& cfg) {
  if (cfg.n <= 0 || cfg.m <= 0 || cfg.n % cfg.m != 0)
    throw ValidationError("planted partition needs m > 0 dividing n");
  if (!(0.0 <= cfg.p_out && cfg.p_out <= cfg.p_in && cfg.p_in <= 1.0))
    throw ValidationError("planted partition needs 0 <= p_out <= p_in <= 1");
  const NodeId block = cfg.n / cfg.m;
  std::vector<int> labels(static_cast<std::size_t>(cfg.n));
  for (NodeId v = 0; v < cfg.n; ++v) labels[static_cast<std::size_t>(v)] = v / block;

  Rng rng(cfg.rng_seed);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < cfg.n; ++i)
    for (NodeId j = i + 1; j < cfg.n; ++j) {
      const double p = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)] ? cfg.p_in : cfg.p_out;
      if (uniform01(rng) < p) edges.emplace_back(i, j);
    }
  return {Graph(cfg.n, edges), Partition::from_labels(std::span<const int>(labels))};
}

PlantedPartitionConfig girvan_preset(std::uint64_t rng_seed, double out_degree, double mean_degree) {
  if (!(out_degree >= 0.0 && out_degree <= mean_degree))
    throw ValidationError("girvan preset needs 0 <= out_degree <= mean_degree");
  PlantedPartitionConfig cfg;
  cfg.n = 128;
  cfg.m = 4;
  cfg.p_in = (mean_degree - out_degree) / 31.0;
  cfg.p_out = out_degree / 96.0;
  cfg.rng_seed = rng_seed;
  return cfg;
}

PlantedGraph lancichinetti(const LancichinettiConfig& cfg) {
  if (cfg.n < 2) throw ValidationError("lancichinetti needs n >= 2");
  if (!(cfg.mixing >= 0.0 && cfg.mixing < 1.0)) throw ValidationError("mixing must lie in [0, 1)");
  if (!(cfg.mean_degree >= 1.0)) throw ValidationError("mean_degree must be >= 1");
  if (cfg.mean_community_size < cfg.mean_degree)
    throw ValidationError("mean_community_size must be >= mean_degree");

  Rng rng(cfg.rng_seed);
  const auto n = static_cast<std::size_t>(cfg.n);

  std::vector<int> comm(n);
  std::vector<std::size_t> sizes;
  for (std::size_t covered = 0; covered < n;) {
    auto s = static_cast<std::size_t>(1 + geometric_failures(rng, 1.0 / cfg.mean_community_size));
    s = std::min(s, n - covered);
    for (std::size_t v = covered; v < covered + s; ++v) comm[v] = static_cast<int>(sizes.size());
    sizes.push_back(s);
    covered += s;
  }

  std::vector<std::int64_t> k_in(n), k_out(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto k = 1 + geometric_failures(rng, 1.0 / cfg.mean_degree);
    k = std::min<std::int64_t>(k, cfg.n - 1);
    const auto size = static_cast<std::int64_t>(sizes[static_cast<std::size_t>(comm[v])]);
    // Each share is capped by its own capacity; excess stubs are dropped so
    // that mixing stays the fraction of stubs that leave the community.
    const auto in = std::llround((1.0 - cfg.mixing) * static_cast<double>(k));
    k_in[v] = std::min<std::int64_t>(in, size - 1);
    k_out[v] = std::min<std::int64_t>(k - in, cfg.n - size);
  }

  // Stub totals must be even in every pool.
  std::vector<std::vector<NodeId>> in_stubs(sizes.size());
  for (std::size_t c = 0, start = 0; c < sizes.size(); start += sizes[c], ++c) {
    std::int64_t sum = 0;
    std::size_t arg = start;
    for (std::size_t v = start; v < start + sizes[c]; ++v) {
      sum += k_in[v];
      if (k_in[v] > k_in[arg]) arg = v;
    }
    if (sum % 2 != 0) --k_in[arg];
    for (std::size_t v = start; v < start + sizes[c]; ++v)
      for (std::int64_t s = 0; s < k_in[v]; ++s) in_stubs[c].push_back(static_cast<NodeId>(v));
  }
  std::int64_t out_sum = 0;
  std::size_t out_arg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    out_sum += k_out[v];
    if (k_out[v] > k_out[out_arg]) out_arg = v;
  }
  if (out_sum % 2 != 0) --k_out[out_arg];
  std::vector<NodeId> out_stubs;
  for (std::size_t v = 0; v < n; ++v)
    for (std::int64_t s = 0; s < k_out[v]; ++s) out_stubs.push_back(static_cast<NodeId>(v));

  EdgeSet edges;
  for (auto& stubs : in_stubs) match_stubs(std::move(stubs), [](NodeId, NodeId) { return true; }, edges, rng);
  match_stubs(
      std::move(out_stubs),
      [&](NodeId u, NodeId v) { return comm[static_cast<std::size_t>(u)] != comm[static_cast<std::size_t>(v)]; },
      edges, rng);

  const auto list = edges.sorted();
  return {Graph(cfg.n, list), Partition::from_labels(std::span<const int>(comm))};
}

Graph erdos_renyi(NodeId n, double p, std::uint64_t rng_seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("edge probability must lie in [0, 1]");
  Rng rng(rng_seed);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) edges.emplace_back(i, j);
  return Graph(n, edges);
}

Graph barabasi_albert(NodeId n, double mean_degree, std::uint64_t rng_seed) {
  if (n < 3) throw ValidationError("barabasi_albert needs n >= 3");
  const double per_node = mean_degree / 2.0;
  const auto base = static_cast<std::int64_t>(std::floor(per_node));
  const double extra = per_node - static_cast<double>(base);
  if (base < 1) throw ValidationError("barabasi_albert needs mean_degree >= 2");

  Rng rng(rng_seed);
  std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 2}};
  std::vector<NodeId> ends{0, 1, 0, 2, 1, 2};  // each node once per incident edge
  for (NodeId v = 3; v < n; ++v) {
    auto links = base + (uniform01(rng) < extra ? 1 : 0);
    links = std::min<std::int64_t>(links, v);
    std::vector<NodeId> targets;
    while (static_cast<std::int64_t>(targets.size()) < links) {
      const NodeId t = ends[uniform_index(rng, ends.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.emplace_back(t, v);
      ends.push_back(t);
      ends.push_back(v);
    }
  }
  return Graph(n, edges);
}

}  // namespace sgf
