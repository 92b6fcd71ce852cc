#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sgf/graph.hpp"
#include "sgf/normalization.hpp"
#include "sgf/spectral.hpp"

namespace sgf {

// Which matrix the low-rank filter acts on.
enum class Transformation { modularity, adjacency };

Transformation parse_transformation(std::string_view name);
std::string to_string(Transformation t);

// Symmetric matrix of edge probabilities in [0, 1] with a zero diagonal.
class ProbabilityMatrix {
 public:
  // Throws ValidationError if an entry leaves [0, 1], the diagonal is not
  // zero, or the matrix is not symmetric within 1e-9.
  explicit ProbabilityMatrix(RealMatrix p);

  const RealMatrix& matrix() const noexcept { return p_; }
  Eigen::Index order() const noexcept { return p_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return p_(i, j); }

 private:
  RealMatrix p_;
};

struct EntropyReport {
  double normalized = 0.0;        // raw_bits / normalizer, 0 when density is 0 or 1
  double raw_bits = 0.0;          // sum_{i<j} H_b(p_ij)
  double density = 0.0;           // mean off-diagonal probability
  double normalizer = 0.0;        // -(n(n-1)/2) (log2 d + log2 (1-d))
  double density_weighted = 0.0;  // raw_bits / ((n(n-1)/2) H_b(d)), 0 when degenerate
};

struct SgfConfig {
  Alpha alpha{0.9};
  NormalizationRule rule = NormalizationRule::truncate();
  std::uint64_t rng_seed = 0;
  Transformation transformation = Transformation::modularity;
};

// Modularity mode: A~ = M~ + K K^T / |K|. Adjacency mode: A~ = M~.
RealMatrix back_transform(const RealMatrix& m_tilde, const DegreeVector& k, Transformation t);

ProbabilityMatrix normalize(const RealMatrix& a_tilde, const NormalizationRule& rule);

Graph sample_bernoulli(const ProbabilityMatrix& p, std::uint64_t rng_seed);

EntropyReport normalized_entropy(const ProbabilityMatrix& p);

// Input graph transformed and eigendecomposed once; reused across alphas,
// rules and seeds.
class Forge {
 public:
  Forge(const Graph& input, Transformation t);

  const Graph& input() const noexcept { return input_; }
  const EigenDecomposition& spectrum() const noexcept { return eig_; }
  Transformation transformation() const noexcept { return transformation_; }

  RealMatrix approximated_adjacency(Alpha alpha) const;  // A~
  ProbabilityMatrix expected(Alpha alpha, const NormalizationRule& rule) const;
  Graph generate(const SgfConfig& cfg) const;

 private:
  Graph input_;
  Transformation transformation_;
  DegreeVector degrees_;
  EigenDecomposition eig_;
};

// The A^dagger that sgf() samples from.
ProbabilityMatrix expected_matrix(const Graph& g, const SgfConfig& cfg);

// Full pipeline: transform, filter, back-transform, normalize, sample.
Graph sgf(const Graph& g, const SgfConfig& cfg);

}  // namespace sgf
