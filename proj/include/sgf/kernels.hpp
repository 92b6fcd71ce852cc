#pragma once

// Dense O(n^2) kernels behind the pipeline. Each kernel has an OpenMP
// version and a *_serial reference; both produce bit-identical output
// (reductions are accumulated per row and combined in row order).

#include <cstdint>
#include <span>

#include "sgf/graph.hpp"
#include "sgf/normalization.hpp"

namespace sgf::kernels {

// B = A - k k^T / |K|.
RealMatrix modularity_matrix(const Graph& g, const DegreeVector& k);
RealMatrix modularity_matrix_serial(const Graph& g, const DegreeVector& k);

// sum_{c < rank} values[c] * vectors.col(c) * vectors.col(c)^T.
RealMatrix low_rank_sum(const Eigen::VectorXd& values, const RealMatrix& vectors, Eigen::Index rank);
RealMatrix low_rank_sum_serial(const Eigen::VectorXd& values, const RealMatrix& vectors,
                               Eigen::Index rank);

// m + k k^T / |K|, in place.
void add_degree_outer(RealMatrix& m, const DegreeVector& k);
void add_degree_outer_serial(RealMatrix& m, const DegreeVector& k);

// Elementwise rule application with zero diagonal. The scale rule uses the
// off-diagonal min/max, which must differ (DegenerateError otherwise).
RealMatrix apply_rule(const RealMatrix& a, const NormalizationRule& rule);
RealMatrix apply_rule_serial(const RealMatrix& a, const NormalizationRule& rule);

// Upper-triangle sums used by the entropy report.
struct DyadSums {
  double entropy_bits = 0.0;  // sum_{i<j} H_b(p_ij)
  double probability = 0.0;   // sum_{i<j} p_ij
};
DyadSums dyad_sums(const RealMatrix& p);
DyadSums dyad_sums_serial(const RealMatrix& p);

// Bernoulli draw of every dyad j > i. Row i uses its own stream seeded by
// derive_seed(seed, {i}) and consumes one uniform per j in ascending order.
Graph bernoulli_sample(const RealMatrix& p, std::uint64_t seed);
Graph bernoulli_sample_serial(const RealMatrix& p, std::uint64_t seed);

// Largest absolute eigenvalue of a symmetric matrix (its spectral norm).
double symmetric_spectral_norm(const RealMatrix& m);

// Binary entropy in bits with 0 log 0 := 0.
inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace sgf::kernels
