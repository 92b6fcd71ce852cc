#include "sgf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sgf/error.hpp"
#include "sgf/kernels.hpp"

namespace sgf {

namespace {

using Index = Eigen::Index;

// Relative tolerance under which two moduli count as tied.
constexpr double kTieTol = 1e-10;

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ValidationError("alpha must lie in [0, 1], got " + std::to_string(value));
}

Index Alpha::retained_rank(Index n) const noexcept {
  const double x = value_ * static_cast<double>(n);
  auto r = static_cast<Index>(std::ceil(x - 1e-9 * std::max(1.0, x)));
  return std::clamp<Index>(r, 0, n);
}

bool is_symmetric(const RealMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < j; ++i)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

RealMatrix modularity_matrix(const Graph& g) { return kernels::modularity_matrix(g, degree_vector(g)); }

EigenDecomposition eigendecompose(const RealMatrix& m) {
  if (!is_symmetric(m)) throw ValidationError("eigendecompose: matrix is not symmetric");
  const Index n = m.rows();
  EigenDecomposition out;
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
  if (es.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");
  const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
  const RealMatrix& vec = es.eigenvectors();

  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return std::abs(lam[a]) > std::abs(lam[b]); });

  // Resolve near-ties: within a run of equal moduli, positive values first,
  // then ascending solver index.
  const double scale = std::max(1.0, std::abs(lam[idx.front()]));
  for (std::size_t s = 0; s < idx.size();) {
    std::size_t e = s + 1;
    while (e < idx.size() &&
           std::abs(lam[idx[s]]) - std::abs(lam[idx[e]]) <= kTieTol * scale)
      ++e;
    std::stable_sort(idx.begin() + static_cast<std::ptrdiff_t>(s),
                     idx.begin() + static_cast<std::ptrdiff_t>(e), [&](Index a, Index b) {
                       const bool pa = lam[a] > 0.0, pb = lam[b] > 0.0;
                       if (pa != pb) return pa;
                       return a < b;
                     });
    s = e;
  }

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index c = 0; c < n; ++c) {
    const Index src = idx[static_cast<std::size_t>(c)];
    out.values[c] = lam[src];
    Eigen::VectorXd v = vec.col(src);
    v.normalize();
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < n; ++i)
      if (std::abs(v[i]) > best + 1e-12) {
        best = std::abs(v[i]);
        arg = i;
      }
    if (v[arg] < 0.0) v = -v;
    out.vectors.col(c) = v;
  }
  return out;
}

RealMatrix low_rank_approx(const EigenDecomposition& eig, Alpha alpha) {
  return kernels::low_rank_sum(eig.values, eig.vectors, alpha.retained_rank(eig.order()));
}

double approx_error_bound(const EigenDecomposition& eig, Alpha alpha) {
  const Index r = alpha.retained_rank(eig.order());
  return r < eig.order() ? std::abs(eig.values[r]) : 0.0;
}

}  // namespace sgf
