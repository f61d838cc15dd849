#pragma once

// Cogredient normal forms. For a path L in FS+ we construct invertible,
// equivariant M(lambda) and finite-rank symmetric K(lambda) with
// M^T L M = I + K; FS- paths are handled through -L. For a single FS^i
// operator S we construct a symmetry Q_S with M Q_S M^T + K = S.

#include <cstddef>
#include <optional>
#include <vector>

#include "sflow/grouprep.hpp"
#include "sflow/operators.hpp"

namespace sflow {

struct PositiveSplit {
  CPS positive;   // S: positive definite block, plus tail
  CPS remainder;  // K: supported on the nonpositive spectral subspace, no tails
};

// L = S + K with S = P+ L P+ + (I - P+) and K = (I - P+)(L - I)(I - P+), P+
// the spectral projection onto (0, inf). Throws NotFSplus, NotPositive.
PositiveSplit split_positive(const CPS& op, double rel_tol_cluster = 1e-8);

struct Parametrix {
  int sign = 1;
  std::vector<double> lambdas;
  std::vector<Matrix> m;        // M(lambda), tail part identity
  std::vector<Matrix> k;        // compact part: M^T L M = sign I + k
  std::vector<Matrix> split_k;  // blended K with L = S + K (for -L when sign = -1)
  std::vector<double> centers;  // cover centres carrying frozen splits

  // max over samples of ||M^T L M - (sign I + K)||_2 / (1 + ||L||).
  double max_relative_residual(const OperatorPath& path) const;
  // max over samples of the commutator norm of M with the action.
  double max_commutator(const OrthogonalAction& action) const;
  // min over samples of the smallest singular value of M.
  double min_singular_value() const;
  // Piecewise-linear path through M^T L M at the sample points.
  OperatorPath transformed_path(const OperatorPath& path) const;
};

// `samples` >= 2 grid points in [0, 1]. Throws CoverFailure when the frozen
// splits cannot be kept positive at that resolution, NotFSplus for paths
// outside FS+ and FS-.
Parametrix parametrix(const OperatorPath& path, std::size_t samples, const OrthogonalAction* action = nullptr);

struct PointwiseSection {
  CPS symmetry;  // Q_S, tails +1 / -1
  Matrix m;      // |V|^(1/2) on the block, tails identity
  Matrix k;      // S - M Q_S M^T
  Matrix kernel_projection;
  double residual = 0.0;
};

// Throws NotFSi, ResidualTooLarge (> 1e-9 (1 + ||S||)).
PointwiseSection pointwise_section(const CPS& op, double rel_tol_cluster = 1e-8);

}  // namespace sflow
