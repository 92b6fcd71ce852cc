#include "sgf/community.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "sgf/error.hpp"
#include "sgf/rng.hpp"

namespace sgf {

namespace {

template <class T>
void relabel(std::span<const T> labels, std::vector<int>& out, int& count) {
  std::unordered_map<T, int> ids;
  out.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  count = static_cast<int>(ids.size());
}

// Weighted graph used by the aggregation levels. self[i] holds the sum of
// A_ii entries (twice the internal edge weight of a collapsed community).
struct LevelGraph {
  std::vector<std::vector<std::pair<int, double>>> nbrs;
  std::vector<double> self;
  std::vector<double> strength;
  double total = 0.0;

  std::size_t size() const { return nbrs.size(); }
};

LevelGraph level_from(const Graph& g) {
  LevelGraph lg;
  const auto n = static_cast<std::size_t>(g.size());
  lg.nbrs.resize(n);
  lg.self.assign(n, 0.0);
  lg.strength.assign(n, 0.0);
  for (NodeId u = 0; u < g.size(); ++u) {
    for (NodeId v : g.neighbors(u)) lg.nbrs[static_cast<std::size_t>(u)].emplace_back(v, 1.0);
    lg.strength[static_cast<std::size_t>(u)] = static_cast<double>(g.degree(u));
    lg.total += lg.strength[static_cast<std::size_t>(u)];
  }
  return lg;
}

double level_modularity(const LevelGraph& lg, const std::vector<int>& comm) {
  std::vector<double> in(lg.size(), 0.0), tot(lg.size(), 0.0);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const int c = comm[i];
    tot[static_cast<std::size_t>(c)] += lg.strength[i];
    in[static_cast<std::size_t>(c)] += lg.self[i];
    for (auto [j, w] : lg.nbrs[i])
      if (comm[static_cast<std::size_t>(j)] == c) in[static_cast<std::size_t>(c)] += w;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < lg.size(); ++c) {
    if (tot[c] == 0.0 && in[c] == 0.0) continue;
    q += in[c] / lg.total - (tot[c] / lg.total) * (tot[c] / lg.total);
  }
  return q;
}

// Local moving phase. Returns true if any node changed community.
bool local_moves(const LevelGraph& lg, std::vector<int>& comm, Rng& rng) {
  const std::size_t n = lg.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[static_cast<std::size_t>(comm[i])] += lg.strength[i];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  sgf::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link(n, -1.0);
  std::vector<int> touched;
  bool moved_any = false;
  double q = level_modularity(lg, comm);
  while (true) {
    for (std::size_t i : order) {
      const int own = comm[i];
      const double ki = lg.strength[i];
      touched.clear();
      link[static_cast<std::size_t>(own)] = 0.0;
      touched.push_back(own);
      for (auto [j, w] : lg.nbrs[i]) {
        const int c = comm[static_cast<std::size_t>(j)];
        if (link[static_cast<std::size_t>(c)] < 0.0) {
          link[static_cast<std::size_t>(c)] = 0.0;
          touched.push_back(c);
        }
        link[static_cast<std::size_t>(c)] += w;
      }
      tot[static_cast<std::size_t>(own)] -= ki;

      int best = own;
      double best_gain = link[static_cast<std::size_t>(own)] - tot[static_cast<std::size_t>(own)] * ki / lg.total;
      for (int c : touched) {
        const double gain = link[static_cast<std::size_t>(c)] - tot[static_cast<std::size_t>(c)] * ki / lg.total;
        if (gain > best_gain + 1e-12 || (gain >= best_gain - 1e-12 && c < best)) {
          best = c;
          best_gain = gain;
        }
      }
      tot[static_cast<std::size_t>(best)] += ki;
      if (best != own) {
        comm[i] = best;
        moved_any = true;
      }
      for (int c : touched) link[static_cast<std::size_t>(c)] = -1.0;
    }
    const double q_next = level_modularity(lg, comm);
    const double gain = q_next - q;
    q = q_next;
    if (gain < 1e-9) break;
  }
  return moved_any;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& comm, int count) {
  LevelGraph out;
  const auto m = static_cast<std::size_t>(count);
  out.nbrs.resize(m);
  out.self.assign(m, 0.0);
  out.strength.assign(m, 0.0);
  out.total = lg.total;
  std::vector<std::map<int, double>> acc(m);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const auto ci = static_cast<std::size_t>(comm[i]);
    out.strength[ci] += lg.strength[i];
    out.self[ci] += lg.self[i];
    for (auto [j, w] : lg.nbrs[i]) {
      const int cj = comm[static_cast<std::size_t>(j)];
      if (static_cast<std::size_t>(cj) == ci)
        out.self[ci] += w;
      else
        acc[ci][cj] += w;
    }
  }
  for (std::size_t c = 0; c < m; ++c)
    for (auto [d, w] : acc[c]) out.nbrs[c].emplace_back(d, w);
  return out;
}

}  // namespace

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
  Partition p;
  relabel(labels, p.assignment_, p.count_);
  return p;
}

Partition Partition::from_labels(std::span<const int> labels) {
  Partition p;
  relabel(labels, p.assignment_, p.count_);
  return p;
}

Partition Partition::single(std::size_t n) {
  std::vector<int> l(n, 0);
  return from_labels(std::span<const int>(l));
}

Partition Partition::singletons(std::size_t n) {
  std::vector<int> l(n);
  std::iota(l.begin(), l.end(), 0);
  return from_labels(std::span<const int>(l));
}

Partition partition_from_categories(std::span<const std::string> values) {
  std::unordered_map<std::string, int> ids;
  std::vector<int> l(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    l[i] = ids.try_emplace(values[i], static_cast<int>(ids.size())).first->second;
  return Partition::from_labels(std::span<const int>(l));
}

double modularity(const Graph& g, const Partition& p) {
  if (p.size() != static_cast<std::size_t>(g.size()))
    throw ValidationError("partition length differs from node count");
  const auto k = degree_vector(g);
  if (!(k.total > 0.0)) throw DegenerateError("modularity undefined for a graph without edges");
  const auto m = static_cast<std::size_t>(p.count());
  std::vector<double> internal(m, 0.0), tot(m, 0.0);
  for (NodeId u = 0; u < g.size(); ++u) {
    const auto c = static_cast<std::size_t>(p[static_cast<std::size_t>(u)]);
    tot[c] += k.degrees[static_cast<std::size_t>(u)];
    for (NodeId v : g.neighbors(u))
      if (p[static_cast<std::size_t>(v)] == p[static_cast<std::size_t>(u)]) internal[c] += 1.0;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < m; ++c) q += internal[c] / k.total - (tot[c] / k.total) * (tot[c] / k.total);
  return q;
}

CommunityResult louvain_maximize(const Graph& g, std::uint64_t rng_seed) {
  const auto n = static_cast<std::size_t>(g.size());
  if (g.edge_count() == 0) throw DegenerateError("louvain: graph has no edges");
  Rng rng(rng_seed);

  std::vector<int> membership(n);
  std::iota(membership.begin(), membership.end(), 0);
  LevelGraph lg = level_from(g);
  while (true) {
    std::vector<int> comm(lg.size());
    std::iota(comm.begin(), comm.end(), 0);
    const bool moved = local_moves(lg, comm, rng);
    if (!moved) break;
    std::vector<int> dense;
    int count = 0;
    relabel(std::span<const int>(comm), dense, count);
    for (auto& c : membership) c = dense[static_cast<std::size_t>(c)];
    if (static_cast<std::size_t>(count) == lg.size()) break;
    lg = aggregate(lg, dense, count);
  }
  CommunityResult r;
  r.partition = Partition::from_labels(std::span<const int>(membership));
  r.modularity = modularity(g, r.partition);
  return r;
}

CommunityResult brute_force_max_modularity(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.size());
  if (n > 12) throw ValidationError("brute_force_max_modularity: n must be <= 12");
  const auto k = degree_vector(g);
  if (!(k.total > 0.0)) throw DegenerateError("modularity undefined for a graph without edges");

  std::vector<int> label(n, 0), best_label;
  std::vector<double> tot(n, 0.0), internal(n, 0.0);
  double best = -2.0;

  // Restricted-growth enumeration; internal[c] counts ordered intra pairs.
  auto rec = [&](auto&& self, std::size_t v, int used) -> void {
    if (v == n) {
      double q = 0.0;
      for (int c = 0; c < used; ++c)
        q += internal[static_cast<std::size_t>(c)] / k.total -
             (tot[static_cast<std::size_t>(c)] / k.total) * (tot[static_cast<std::size_t>(c)] / k.total);
      if (q > best + 1e-12) {
        best = q;
        best_label = label;
      }
      return;
    }
    for (int c = 0; c <= used && c < static_cast<int>(n); ++c) {
      double add = 0.0;
      for (NodeId u : g.neighbors(static_cast<NodeId>(v)))
        if (static_cast<std::size_t>(u) < v && label[static_cast<std::size_t>(u)] == c) add += 2.0;
      label[v] = c;
      tot[static_cast<std::size_t>(c)] += k.degrees[v];
      internal[static_cast<std::size_t>(c)] += add;
      self(self, v + 1, c == used ? used + 1 : used);
      tot[static_cast<std::size_t>(c)] -= k.degrees[v];
      internal[static_cast<std::size_t>(c)] -= add;
    }
  };
  rec(rec, 0, 0);

  CommunityResult r;
  r.partition = Partition::from_labels(std::span<const int>(best_label));
  r.modularity = modularity(g, r.partition);
  return r;
}

}  // namespace sgf
