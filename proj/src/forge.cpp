#include "sgf/forge.hpp"

#include <cmath>

#include "sgf/error.hpp"
#include "sgf/kernels.hpp"

namespace sgf {

NormalizationRule NormalizationRule::logistic(double k) {
  if (!(k >= 2.0 && k <= 10.0))
    throw ValidationError("logistic steepness k must lie in [2, 10], got " + std::to_string(k));
  return {Kind::logistic, k};
}

NormalizationRule NormalizationRule::parse(std::string_view name, double logistic_k) {
  if (name == "truncate") return truncate();
  if (name == "scale") return scale();
  if (name == "logistic") return logistic(logistic_k);
  throw ValidationError("unknown normalization rule '" + std::string(name) +
                        "' (expected logistic, truncate or scale)");
}

std::string NormalizationRule::name() const {
  switch (kind) {
    case Kind::logistic: return "logistic";
    case Kind::truncate: return "truncate";
    case Kind::scale: return "scale";
  }
  return "?";
}

Transformation parse_transformation(std::string_view name) {
  if (name == "modularity") return Transformation::modularity;
  if (name == "adjacency") return Transformation::adjacency;
  throw ValidationError("unknown transformation '" + std::string(name) +
                        "' (expected modularity or adjacency)");
}

std::string to_string(Transformation t) {
  return t == Transformation::modularity ? "modularity" : "adjacency";
}

ProbabilityMatrix::ProbabilityMatrix(RealMatrix p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols()) throw ValidationError("probability matrix is not square");
  for (Eigen::Index j = 0; j < p_.cols(); ++j) {
    if (p_(j, j) != 0.0) throw ValidationError("probability matrix has non-zero diagonal");
    for (Eigen::Index i = 0; i < p_.rows(); ++i) {
      const double x = p_(i, j);
      if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("probability outside [0, 1]");
      if (std::abs(x - p_(j, i)) > 1e-9) throw ValidationError("probability matrix is not symmetric");
    }
  }
}

RealMatrix back_transform(const RealMatrix& m_tilde, const DegreeVector& k, Transformation t) {
  if (static_cast<std::size_t>(m_tilde.rows()) != k.size())
    throw ValidationError("back_transform: matrix order differs from degree vector length");
  RealMatrix a = m_tilde;
  if (t == Transformation::modularity) kernels::add_degree_outer(a, k);
  return a;
}

ProbabilityMatrix normalize(const RealMatrix& a_tilde, const NormalizationRule& rule) {
  return ProbabilityMatrix(kernels::apply_rule(a_tilde, rule));
}

Graph sample_bernoulli(const ProbabilityMatrix& p, std::uint64_t rng_seed) {
  return kernels::bernoulli_sample(p.matrix(), rng_seed);
}

EntropyReport normalized_entropy(const ProbabilityMatrix& p) {
  EntropyReport r;
  const double n = static_cast<double>(p.order());
  const double dyads = n * (n - 1.0) / 2.0;
  if (dyads <= 0.0) return r;
  const auto sums = kernels::dyad_sums(p.matrix());
  r.raw_bits = sums.entropy_bits;
  r.density = sums.probability / dyads;
  if (r.density > 0.0 && r.density < 1.0) {
    r.normalizer = -dyads * (std::log2(r.density) + std::log2(1.0 - r.density));
    r.normalized = r.raw_bits / r.normalizer;
    r.density_weighted = r.raw_bits / (dyads * kernels::binary_entropy(r.density));
  }
  return r;
}

Forge::Forge(const Graph& input, Transformation t)
    : input_(input), transformation_(t), degrees_(degree_vector(input)) {
  if (t == Transformation::modularity) {
    if (!(degrees_.total > 0.0))
      throw DegenerateError("modularity transformation needs at least one edge");
    eig_ = eigendecompose(kernels::modularity_matrix(input_, degrees_));
  } else {
    eig_ = eigendecompose(input_.adjacency());
  }
}

RealMatrix Forge::approximated_adjacency(Alpha alpha) const {
  return back_transform(low_rank_approx(eig_, alpha), degrees_, transformation_);
}

ProbabilityMatrix Forge::expected(Alpha alpha, const NormalizationRule& rule) const {
  return normalize(approximated_adjacency(alpha), rule);
}

Graph Forge::generate(const SgfConfig& cfg) const {
  return sample_bernoulli(expected(cfg.alpha, cfg.rule), cfg.rng_seed)
      .with_attributes(input_.attributes());
}

ProbabilityMatrix expected_matrix(const Graph& g, const SgfConfig& cfg) {
  return Forge(g, cfg.transformation).expected(cfg.alpha, cfg.rule);
}

Graph sgf(const Graph& g, const SgfConfig& cfg) { return Forge(g, cfg.transformation).generate(cfg); }

}  // namespace sgf
