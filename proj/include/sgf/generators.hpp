#pragma once

#include <cstdint>

#include "sgf/community.hpp"
#include "sgf/graph.hpp"

namespace sgf {

struct PlantedGraph {
  Graph graph;
  Partition planted;
};

// m equal blocks of n/m consecutive nodes; each dyad independently an edge
// with p_in inside a block and p_out across blocks.
struct PlantedPartitionConfig {
  NodeId n = 128;
  int m = 4;
  double p_in = 0.5;
  double p_out = 0.0;
  std::uint64_t rng_seed = 0;
};

PlantedGraph planted_partition(const PlantedPartitionConfig& cfg);

// Girvan-style preset: 128 nodes, 4 blocks of 32, expected degree
// mean_degree with out_degree of it expected across blocks.
PlantedPartitionConfig girvan_preset(std::uint64_t rng_seed, double out_degree = 4.0,
                                     double mean_degree = 16.0);

// Community sizes and target degrees drawn geometrically; `mixing` is the
// fraction of each node's stubs matched outside its community.
struct LancichinettiConfig {
  NodeId n = 1000;
  double mean_degree = 15.0;
  double mean_community_size = 50.0;
  double mixing = 0.2;
  std::uint64_t rng_seed = 0;
};

PlantedGraph lancichinetti(const LancichinettiConfig& cfg);

// G(n, p).
Graph erdos_renyi(NodeId n, double p, std::uint64_t rng_seed);

// Preferential attachment seeded by a triangle. Each new node links to
// floor(mean_degree/2) existing nodes, plus one more with probability equal
// to the fractional part, so the mean degree approaches mean_degree.
Graph barabasi_albert(NodeId n, double mean_degree, std::uint64_t rng_seed);

}  // namespace sgf
