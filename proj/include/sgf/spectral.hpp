#pragma once

#include "sgf/graph.hpp"

namespace sgf {

// Eigenpairs of a symmetric matrix ordered by descending |lambda|. Equal
// moduli put the positive eigenvalue first, then keep ascending-value order.
// Each eigenvector has unit norm and its largest-magnitude entry positive.
struct EigenDecomposition {
  Eigen::VectorXd values;
  RealMatrix vectors;  // column c pairs with values[c]

  Eigen::Index order() const noexcept { return values.size(); }
};

// Fraction of eigenpairs kept by the low-rank filter.
class Alpha {
 public:
  // Throws ValidationError outside [0, 1].
  explicit Alpha(double value);

  double value() const noexcept { return value_; }
  // ceil(alpha * n), computed so that e.g. 0.3 * 10 keeps 3 terms, not 4.
  Eigen::Index retained_rank(Eigen::Index n) const noexcept;

 private:
  double value_;
};

// B = A - K K^T / |K|. DegenerateError on a graph with no edges.
RealMatrix modularity_matrix(const Graph& g);

// ValidationError when m is not symmetric within 1e-9.
EigenDecomposition eigendecompose(const RealMatrix& m);

// sum of the first ceil(alpha*n) eigen-terms.
RealMatrix low_rank_approx(const EigenDecomposition& eig, Alpha alpha);

// |lambda_{r+1}| for r = ceil(alpha*n) < n, else 0. Equals ||M - M~||_2.
double approx_error_bound(const EigenDecomposition& eig, Alpha alpha);

bool is_symmetric(const RealMatrix& m, double tol = 1e-9);

}  // namespace sgf
