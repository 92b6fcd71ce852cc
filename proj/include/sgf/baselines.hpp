#pragma once

#include <cstdint>
#include <vector>

#include "sgf/community.hpp"
#include "sgf/graph.hpp"

namespace sgf {

// Rewiring generator targeting a modularity value for a fixed partition.
struct TrajanovskiConfig {
  double q_target = 0.3;
  int m = 2;       // communities
  NodeId n = 16;   // nodes
  std::int64_t l = 20;  // links
  std::uint64_t rng_seed = 0;
};

struct TrajanovskiResult {
  Graph graph;
  Partition partition;        // the fixed initial partition
  double initial_q = 0.0;     // Q of the tree-of-communities start
  double final_q = 0.0;       // Q of `graph` w.r.t. `partition`
  double max_step = 0.0;      // largest |dQ| of any accepted move
  bool target_above_initial = false;  // q_target > initial_q; start returned as-is
  std::vector<double> q_trace;        // Q after each accepted move
};

// Start: m near-equal communities, each a random spanning tree plus extra
// intra links balanced to equalize community degree sums, joined by m-1
// inter links in a tree. Then random Q-non-increasing moves (intra->inter
// migration, inter endpoint swap, intra relocation) until Q <= q_target or
// no move is accepted for a long run of proposals.
TrajanovskiResult trajanovski_generate(const TrajanovskiConfig& cfg);

// Degree-corrected SBM with exact block edge counts.
struct DcsbmConfig {
  std::vector<double> degrees;
  Partition partition;
  std::vector<std::vector<std::int64_t>> block_edges;  // diagonal = intra edges
  std::uint64_t rng_seed = 0;
};

// Degree sequence, group assignment and block edge counts of g under p.
DcsbmConfig dcsbm_config_from(const Graph& g, const Partition& p);

// Places block_edges[r][s] edges per group pair, endpoints drawn in
// proportion to degree; self-loops and repeats are redrawn (100 tries per
// edge, then InfeasibleError).
Graph dcsbm_generate(const DcsbmConfig& cfg);

}  // namespace sgf
