#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sgf {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

// Dense symmetric real matrix; every pipeline stage (M, M~, A~) uses it.
using RealMatrix = Eigen::MatrixXd;

// Category assigned to nodes that have no row in an attribute file.
inline constexpr std::string_view kMissingAttribute = "NA";

// Simple undirected graph on nodes 0..n-1 with optional categorical node
// attributes. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list. Reversed and repeated pairs collapse to one
  // edge; self-loops and out-of-range endpoints throw ValidationError.
  Graph(NodeId n, std::span<const Edge> edges);

  // Adjacency realization: entries strictly 0/1 with a symmetric, zero
  // diagonal pattern. Anything else throws ValidationError.
  static Graph from_adjacency(const RealMatrix& adjacency);

  NodeId size() const noexcept { return static_cast<NodeId>(adj_.size()); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  // Sorted neighbour list of v.
  std::span<const NodeId> neighbors(NodeId v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(NodeId v) const { return adj_[static_cast<std::size_t>(v)].size(); }
  bool has_edge(NodeId u, NodeId v) const;

  // Edges as (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  RealMatrix adjacency() const;

  const std::map<std::string, std::vector<std::string>>& attributes() const noexcept {
    return attributes_;
  }
  // Returns a copy carrying `values` under `name`; values.size() must equal n.
  Graph with_attribute(std::string name, std::vector<std::string> values) const;
  // Returns a copy carrying exactly the given attribute map.
  Graph with_attributes(std::map<std::string, std::vector<std::string>> attrs) const;

  // Topology and attributes equal.
  friend bool operator==(const Graph& a, const Graph& b) = default;

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::size_t edge_count_ = 0;
  std::map<std::string, std::vector<std::string>> attributes_;
};

struct DegreeVector {
  std::vector<double> degrees;
  double total = 0.0;  // |K|, twice the edge count

  std::size_t size() const noexcept { return degrees.size(); }
  Eigen::Map<const Eigen::VectorXd> as_eigen() const {
    return {degrees.data(), static_cast<Eigen::Index>(degrees.size())};
  }
};

DegreeVector degree_vector(const Graph& g);

// Mean local clustering coefficient; degree < 2 nodes count as 0.
double average_clustering(const Graph& g);

// Per-node local clustering coefficients (0 for degree < 2).
std::vector<double> local_clustering(const Graph& g);

// Edge-list text: '#' comments, optional "#nodes N" directive, "i j" lines.
Graph load_edge_list(std::string_view text);
Graph load_edge_list_file(const std::string& path);

// "#nodes N" header followed by sorted "i j" lines (i < j), no trailing newline.
std::string write_edge_list(const Graph& g);
void write_edge_list_file(const Graph& g, const std::string& path);

// CSV with header "node,attr1,..." attaching categorical attributes to g.
Graph load_attributes(std::string_view text, const Graph& g);
Graph load_attributes_file(const std::string& path, const Graph& g);

// Whole-file read; throws Error when the file cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace sgf
