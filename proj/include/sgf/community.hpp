#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sgf/graph.hpp"

namespace sgf {

// Node-to-community assignment with ids 0..m-1, each used at least once.
class Partition {
 public:
  Partition() = default;
  // Relabels arbitrary integer labels to 0..m-1 in order of first appearance.
  static Partition from_labels(std::span<const std::int64_t> labels);
  static Partition from_labels(std::span<const int> labels);
  static Partition single(std::size_t n);
  static Partition singletons(std::size_t n);

  std::size_t size() const noexcept { return assignment_.size(); }
  int count() const noexcept { return count_; }
  int operator[](std::size_t i) const { return assignment_[i]; }
  const std::vector<int>& assignment() const noexcept { return assignment_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  int count_ = 0;
};

// Categorical values (e.g. a node attribute) as a partition.
Partition partition_from_categories(std::span<const std::string> values);

struct CommunityResult {
  Partition partition;
  double modularity = 0.0;
};

// Q = (1/|K|) sum over all ordered pairs (i, j), diagonal included, of
// (A_ij - k_i k_j / |K|) [c_i == c_j]. DegenerateError when |K| = 0.
double modularity(const Graph& g, const Partition& p);

// Multi-level local-moving heuristic. Node order within a level is a seeded
// shuffle; equal gains go to the lowest community id; a level ends when a
// full pass gains less than 1e-9.
CommunityResult louvain_maximize(const Graph& g, std::uint64_t rng_seed);

// Exhaustive search over all set partitions; n <= 12.
CommunityResult brute_force_max_modularity(const Graph& g);

inline int partition_count(const Partition& p) { return p.count(); }

}  // namespace sgf
