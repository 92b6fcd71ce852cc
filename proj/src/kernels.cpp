#include "sgf/kernels.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include <omp.h>

#include "sgf/error.hpp"
#include "sgf/rng.hpp"

namespace sgf::kernels {

namespace {

using Index = Eigen::Index;
using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_total(const DegreeVector& k) {
  if (!(k.total > 0.0)) throw DegenerateError("degree sum |K| is zero");
}

// Upper-triangle entry (i, j), j >= i; identical arithmetic in both paths.
inline double low_rank_entry(const RowMajor& w, const Eigen::VectorXd& values, Index i, Index j,
                             Index rank) {
  double s = 0.0;
  const double* wi = w.row(i).data();
  const double* wj = w.row(j).data();
  for (Index c = 0; c < rank; ++c) s += values[c] * wi[c] * wj[c];
  return s;
}

inline double rule_value(double x, const NormalizationRule& rule, double lo, double span) {
  switch (rule.kind) {
    case NormalizationRule::Kind::logistic: return logistic(x, rule.logistic_k);
    case NormalizationRule::Kind::truncate: return truncate(x);
    case NormalizationRule::Kind::scale: return truncate((x - lo) / span);
  }
  return 0.0;
}

std::pair<double, double> offdiag_range(const RealMatrix& a) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) {
        lo = std::min(lo, a(i, j));
        hi = std::max(hi, a(i, j));
      }
  return {lo, hi};
}

std::pair<double, double> offdiag_range_parallel(const RealMatrix& a) {
  const Index n = a.cols();
  std::vector<double> lo(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<double> hi(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i)
      if (i != j) {
        lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], a(i, j));
        hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j)], a(i, j));
      }
  }
  return {*std::min_element(lo.begin(), lo.end()), *std::max_element(hi.begin(), hi.end())};
}

void check_scale_range(double lo, double hi) {
  if (!(hi > lo)) throw DegenerateError("scale normalization needs max > min over off-diagonal entries");
}

std::vector<Edge> sample_row(const RealMatrix& p, Index i, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
  std::vector<Edge> out;
  for (Index j = i + 1; j < p.cols(); ++j) {
    const double u = uniform01(rng);
    if (u < p(i, j)) out.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  }
  return out;
}

}  // namespace

RealMatrix modularity_matrix_serial(const Graph& g, const DegreeVector& k) {
  require_total(k);
  const Index n = g.size();
  RealMatrix b(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      b(i, j) = -k.degrees[static_cast<std::size_t>(i)] * k.degrees[static_cast<std::size_t>(j)] / k.total;
  for (NodeId u = 0; u < g.size(); ++u)
    for (NodeId v : g.neighbors(u)) b(u, v) += 1.0;
  return b;
}

RealMatrix modularity_matrix(const Graph& g, const DegreeVector& k) {
  require_total(k);
  const Index n = g.size();
  RealMatrix b(n, n);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i)
      b(i, j) = -k.degrees[static_cast<std::size_t>(i)] * k.degrees[static_cast<std::size_t>(j)] / k.total;
    for (NodeId v : g.neighbors(static_cast<NodeId>(j))) b(v, j) += 1.0;
  }
  return b;
}

RealMatrix low_rank_sum_serial(const Eigen::VectorXd& values, const RealMatrix& vectors, Index rank) {
  const Index n = vectors.rows();
  RealMatrix m = RealMatrix::Zero(n, n);
  if (rank == 0) return m;
  const RowMajor w = vectors.leftCols(rank);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) m(i, j) = m(j, i) = low_rank_entry(w, values, i, j, rank);
  return m;
}

RealMatrix low_rank_sum(const Eigen::VectorXd& values, const RealMatrix& vectors, Index rank) {
  const Index n = vectors.rows();
  RealMatrix m = RealMatrix::Zero(n, n);
  if (rank == 0) return m;
  const RowMajor w = vectors.leftCols(rank);
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) m(i, j) = m(j, i) = low_rank_entry(w, values, i, j, rank);
  return m;
}

void add_degree_outer_serial(RealMatrix& m, const DegreeVector& k) {
  require_total(k);
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      m(i, j) += k.degrees[static_cast<std::size_t>(i)] * k.degrees[static_cast<std::size_t>(j)] / k.total;
}

void add_degree_outer(RealMatrix& m, const DegreeVector& k) {
  require_total(k);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      m(i, j) += k.degrees[static_cast<std::size_t>(i)] * k.degrees[static_cast<std::size_t>(j)] / k.total;
}

RealMatrix apply_rule_serial(const RealMatrix& a, const NormalizationRule& rule) {
  double lo = 0.0, span = 1.0;
  if (rule.kind == NormalizationRule::Kind::scale) {
    auto [l, h] = offdiag_range(a);
    check_scale_range(l, h);
    lo = l;
    span = h - l;
  }
  RealMatrix out(a.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) out(i, j) = i == j ? 0.0 : rule_value(a(i, j), rule, lo, span);
  return out;
}

RealMatrix apply_rule(const RealMatrix& a, const NormalizationRule& rule) {
  double lo = 0.0, span = 1.0;
  if (rule.kind == NormalizationRule::Kind::scale) {
    auto [l, h] = offdiag_range_parallel(a);
    check_scale_range(l, h);
    lo = l;
    span = h - l;
  }
  RealMatrix out(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) out(i, j) = i == j ? 0.0 : rule_value(a(i, j), rule, lo, span);
  return out;
}

DyadSums dyad_sums_serial(const RealMatrix& p) {
  DyadSums s;
  for (Index j = 1; j < p.cols(); ++j) {
    double h = 0.0, q = 0.0;
    for (Index i = 0; i < j; ++i) {
      h += binary_entropy(p(i, j));
      q += p(i, j);
    }
    s.entropy_bits += h;
    s.probability += q;
  }
  return s;
}

DyadSums dyad_sums(const RealMatrix& p) {
  const Index n = p.cols();
  std::vector<double> h(static_cast<std::size_t>(n), 0.0), q(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (Index j = 1; j < n; ++j) {
    double hj = 0.0, qj = 0.0;
    for (Index i = 0; i < j; ++i) {
      hj += binary_entropy(p(i, j));
      qj += p(i, j);
    }
    h[static_cast<std::size_t>(j)] = hj;
    q[static_cast<std::size_t>(j)] = qj;
  }
  DyadSums s;
  for (Index j = 1; j < n; ++j) {
    s.entropy_bits += h[static_cast<std::size_t>(j)];
    s.probability += q[static_cast<std::size_t>(j)];
  }
  return s;
}

Graph bernoulli_sample_serial(const RealMatrix& p, std::uint64_t seed) {
  std::vector<Edge> edges;
  for (Index i = 0; i < p.rows(); ++i) {
    auto row = sample_row(p, i, seed);
    edges.insert(edges.end(), row.begin(), row.end());
  }
  return Graph(static_cast<NodeId>(p.rows()), edges);
}

Graph bernoulli_sample(const RealMatrix& p, std::uint64_t seed) {
  const Index n = p.rows();
  std::vector<std::vector<Edge>> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = sample_row(p, i, seed);
  std::vector<Edge> edges;
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  return Graph(static_cast<NodeId>(n), edges);
}

double symmetric_spectral_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigenvalue computation failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace sgf::kernels
