#include "sgf/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sgf/error.hpp"
#include "sgf/rng.hpp"

namespace sgf {

namespace {

constexpr int kEdgeRetries = 100;
constexpr int kIdleProposals = 20000;

Edge ordered(NodeId u, NodeId v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Fixed-partition modularity bookkeeping: Q = sum_c L_c/L - (D_c/2L)^2.
struct BlockStats {
  std::vector<double> links;   // L_c
  std::vector<double> degree;  // D_c
  double total = 0.0;          // L

  double q() const {
    double s = 0.0;
    for (std::size_t c = 0; c < links.size(); ++c)
      s += links[c] / total - (degree[c] / (2.0 * total)) * (degree[c] / (2.0 * total));
    return s;
  }
};

}  // namespace

TrajanovskiResult trajanovski_generate(const TrajanovskiConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 1 || cfg.m > cfg.n) throw ValidationError("trajanovski needs 1 <= m <= n");
  if (cfg.l < cfg.n - 1) throw InfeasibleError("trajanovski needs l >= n - 1 links");

  const auto m = static_cast<std::size_t>(cfg.m);
  std::vector<NodeId> start(m + 1, 0);
  for (std::size_t c = 0; c < m; ++c)
    start[c + 1] = start[c] + cfg.n / cfg.m + (static_cast<NodeId>(c) < cfg.n % cfg.m ? 1 : 0);
  std::vector<int> comm(static_cast<std::size_t>(cfg.n));
  for (std::size_t c = 0; c < m; ++c)
    for (NodeId v = start[c]; v < start[c + 1]; ++v) comm[static_cast<std::size_t>(v)] = static_cast<int>(c);
  auto size_of = [&](std::size_t c) { return static_cast<std::int64_t>(start[c + 1] - start[c]); };

  std::int64_t capacity = static_cast<std::int64_t>(m) - 1;
  for (std::size_t c = 0; c < m; ++c) capacity += size_of(c) * (size_of(c) - 1) / 2;
  if (cfg.l > capacity)
    throw InfeasibleError("trajanovski: l exceeds intra capacity plus m-1 inter links");

  Rng rng(cfg.rng_seed);
  std::set<Edge> edges;
  BlockStats st{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0), static_cast<double>(cfg.l)};
  auto add = [&](NodeId u, NodeId v) {
    edges.insert(ordered(u, v));
    const auto cu = static_cast<std::size_t>(comm[static_cast<std::size_t>(u)]);
    const auto cv = static_cast<std::size_t>(comm[static_cast<std::size_t>(v)]);
    if (cu == cv) st.links[cu] += 1.0;
    st.degree[cu] += 1.0;
    st.degree[cv] += 1.0;
  };
  auto remove = [&](NodeId u, NodeId v) {
    edges.erase(ordered(u, v));
    const auto cu = static_cast<std::size_t>(comm[static_cast<std::size_t>(u)]);
    const auto cv = static_cast<std::size_t>(comm[static_cast<std::size_t>(v)]);
    if (cu == cv) st.links[cu] -= 1.0;
    st.degree[cu] -= 1.0;
    st.degree[cv] -= 1.0;
  };
  auto random_node = [&](std::size_t c) {
    return static_cast<NodeId>(start[c] + static_cast<NodeId>(uniform_index(rng, static_cast<std::uint64_t>(size_of(c)))));
  };

  // Spanning trees inside communities, then a tree over communities.
  for (std::size_t c = 0; c < m; ++c)
    for (NodeId v = start[c] + 1; v < start[c + 1]; ++v)
      add(v, start[c] + static_cast<NodeId>(uniform_index(rng, static_cast<std::uint64_t>(v - start[c]))));
  for (std::size_t c = 1; c < m; ++c) {
    const NodeId u = random_node(c);
    const NodeId v = random_node(uniform_index(rng, c));
    add(u, v);
  }

  // Remaining links go inside communities, always to the one with the
  // smallest degree sum that still has room.
  std::int64_t remaining = cfg.l - static_cast<std::int64_t>(edges.size());
  while (remaining > 0) {
    std::size_t target = m;
    for (std::size_t c = 0; c < m; ++c) {
      if (static_cast<std::int64_t>(st.links[c]) >= size_of(c) * (size_of(c) - 1) / 2) continue;
      if (target == m || st.degree[c] < st.degree[target]) target = c;
    }
    if (target == m) throw InfeasibleError("trajanovski: no room for intra links");
    NodeId u, v;
    do {
      u = random_node(target);
      v = random_node(target);
    } while (u == v || edges.count(ordered(u, v)));
    add(u, v);
    --remaining;
  }

  TrajanovskiResult r;
  r.partition = Partition::from_labels(std::span<const int>(comm));
  r.initial_q = st.q();
  r.final_q = r.initial_q;
  if (cfg.q_target > r.initial_q) {
    r.target_above_initial = true;
  } else {
    auto pick_edge = [&](bool intra, Edge& out) {
      // uniform over edges of the requested kind, by rejection
      std::vector<Edge> pool;
      for (const auto& e : edges)
        if ((comm[static_cast<std::size_t>(e.first)] == comm[static_cast<std::size_t>(e.second)]) == intra)
          pool.push_back(e);
      if (pool.empty()) return false;
      out = pool[uniform_index(rng, pool.size())];
      return true;
    };

    int idle = 0;
    while (r.final_q > cfg.q_target && idle < kIdleProposals) {
      ++idle;
      const auto kind = uniform_index(rng, 3);
      const double before = st.q();
      Edge old{};
      Edge fresh{};
      if (kind == 0) {
        // intra -> inter migration
        if (m < 2 || !pick_edge(true, old)) continue;
        const auto a = uniform_index(rng, m);
        auto b = uniform_index(rng, m - 1);
        if (b >= a) ++b;
        const NodeId u = random_node(a);
        fresh = ordered(u, random_node(b));
      } else if (kind == 1) {
        // move one endpoint of an inter edge into a third community
        if (m < 3 || !pick_edge(false, old)) continue;
        NodeId keep = old.first, drop = old.second;
        if (uniform_index(rng, 2) == 1) std::swap(keep, drop);
        const auto ck = static_cast<std::size_t>(comm[static_cast<std::size_t>(keep)]);
        const auto cd = static_cast<std::size_t>(comm[static_cast<std::size_t>(drop)]);
        const auto d = uniform_index(rng, m);
        if (d == ck || d == cd) continue;
        fresh = ordered(keep, random_node(d));
      } else {
        // relocate an intra edge into another community
        if (m < 2 || !pick_edge(true, old)) continue;
        const auto c = static_cast<std::size_t>(comm[static_cast<std::size_t>(old.first)]);
        auto d = uniform_index(rng, m - 1);
        if (d >= c) ++d;
        const NodeId u = random_node(d);
        fresh = ordered(u, random_node(d));
      }
      if (fresh.first == fresh.second || edges.count(fresh)) continue;

      remove(old.first, old.second);
      add(fresh.first, fresh.second);
      const double after = st.q();
      if (after > before + 1e-15) {
        remove(fresh.first, fresh.second);
        add(old.first, old.second);
        continue;
      }
      idle = 0;
      r.max_step = std::max(r.max_step, before - after);
      r.final_q = after;
      r.q_trace.push_back(after);
    }
  }

  const std::vector<Edge> list(edges.begin(), edges.end());
  r.graph = Graph(cfg.n, list);
  return r;
}

DcsbmConfig dcsbm_config_from(const Graph& g, const Partition& p) {
  if (p.size() != static_cast<std::size_t>(g.size()))
    throw ValidationError("partition length differs from node count");
  DcsbmConfig cfg;
  cfg.partition = p;
  cfg.degrees = degree_vector(g).degrees;
  const auto m = static_cast<std::size_t>(p.count());
  cfg.block_edges.assign(m, std::vector<std::int64_t>(m, 0));
  for (auto [u, v] : g.edges()) {
    const auto a = static_cast<std::size_t>(p[static_cast<std::size_t>(u)]);
    const auto b = static_cast<std::size_t>(p[static_cast<std::size_t>(v)]);
    ++cfg.block_edges[a][b];
    if (a != b) ++cfg.block_edges[b][a];
  }
  return cfg;
}

Graph dcsbm_generate(const DcsbmConfig& cfg) {
  const auto n = cfg.partition.size();
  const auto m = static_cast<std::size_t>(cfg.partition.count());
  if (cfg.degrees.size() != n) throw ValidationError("dcsbm: degree sequence length differs from partition");
  if (cfg.block_edges.size() != m) throw ValidationError("dcsbm: block_edges must be m x m");
  for (const auto& row : cfg.block_edges)
    if (row.size() != m) throw ValidationError("dcsbm: block_edges must be m x m");

  std::vector<std::vector<NodeId>> members(m);
  std::vector<std::vector<double>> cumulative(m);
  std::vector<double> group_degree(m, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto c = static_cast<std::size_t>(cfg.partition[v]);
    members[c].push_back(static_cast<NodeId>(v));
    group_degree[c] += cfg.degrees[v];
    cumulative[c].push_back(group_degree[c]);
  }
  for (std::size_t r = 0; r < m; ++r) {
    double ends = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      if (cfg.block_edges[r][s] != cfg.block_edges[s][r]) throw ValidationError("dcsbm: block_edges not symmetric");
      if (cfg.block_edges[r][s] < 0) throw ValidationError("dcsbm: negative block edge count");
      ends += static_cast<double>(cfg.block_edges[r][s]) * (r == s ? 2.0 : 1.0);
    }
    if (std::abs(ends - group_degree[r]) > 1e-9)
      throw ValidationError("dcsbm: group degree sum of group " + std::to_string(r) +
                            " disagrees with block_edges");
  }

  Rng rng(cfg.rng_seed);
  auto draw = [&](std::size_t c) {
    const double x = uniform01(rng) * group_degree[c];
    auto it = std::upper_bound(cumulative[c].begin(), cumulative[c].end(), x);
    if (it == cumulative[c].end()) --it;
    return members[c][static_cast<std::size_t>(it - cumulative[c].begin())];
  };

  std::set<Edge> edges;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = r; s < m; ++s)
      for (std::int64_t e = 0; e < cfg.block_edges[r][s]; ++e) {
        bool placed = false;
        for (int t = 0; t < kEdgeRetries && !placed; ++t) {
          const NodeId u = draw(r), v = draw(s);
          if (u == v || edges.count(ordered(u, v))) continue;
          edges.insert(ordered(u, v));
          placed = true;
        }
        if (!placed)
          throw InfeasibleError("dcsbm: could not place an edge between groups " + std::to_string(r) +
                                " and " + std::to_string(s) + " after " + std::to_string(kEdgeRetries) +
                                " draws");
      }
  const std::vector<Edge> list(edges.begin(), edges.end());
  return Graph(static_cast<NodeId>(n), list);
}

}  // namespace sgf
