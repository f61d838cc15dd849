#pragma once

// Operator model: a symmetric d x d block plus formal +1 / -1 tails standing
// for infinite-dimensional eigenspaces at the essential spectrum. Paths are
// affine (A + lambda B) or piecewise linear in lambda in [0, 1].

#include <cstddef>
#include <optional>
#include <vector>

#include "sflow/grouprep.hpp"
#include "sflow/linalg.hpp"

namespace sflow {

enum class FSComponent { FSplus, FSminus, FSi, FiniteDim };

const char* to_string(FSComponent c) noexcept;

struct Tails {
  bool plus = false;
  bool minus = false;

  friend bool operator==(const Tails&, const Tails&) = default;
};

FSComponent classify(Tails tails) noexcept;

class CompactPerturbedSymmetry {
 public:
  CompactPerturbedSymmetry() = default;
  // The block is symmetrized on construction.
  explicit CompactPerturbedSymmetry(Matrix block, Tails tails = {});

  const Matrix& block() const noexcept { return block_; }
  Tails tails() const noexcept { return tails_; }
  std::size_t dim() const noexcept { return block_.rows(); }
  FSComponent component() const noexcept { return classify(tails_); }
  // Spectral norm of the block.
  double norm() const;

 private:
  Matrix block_;
  Tails tails_;
};

using CPS = CompactPerturbedSymmetry;

struct EigenCluster {
  double value = 0.0;  // mean of the merged eigenvalues
  Matrix vectors;      // d x multiplicity, orthonormal columns
  std::size_t multiplicity() const noexcept { return vectors.cols(); }
};

struct BlockSpectrum {
  std::vector<double> eigenvalues;  // ascending, with multiplicity
  std::vector<EigenCluster> clusters;
  double block_norm = 0.0;
  double tol_cluster = 0.0;  // absolute tolerance used for merging
};

// Relative tolerances; absolute values are rel * (1 + ||block||).
struct SpectralTolerances {
  double cluster = 1e-8;
  double invert = 1e-10;
};

BlockSpectrum block_spectrum(const CPS& op, double rel_tol_cluster = 1e-8);

// Orthonormal frame of all block eigenvectors with eigenvalue in [a, b].
// InfiniteRank if a tail value lies in [a, b]; BoundaryHit if an eigenvalue
// lies within the cluster tolerance of a or b.
Matrix spectral_interval_frame(const CPS& op, double a, double b, double rel_tol_cluster = 1e-8);
Matrix spectral_interval_frame(const BlockSpectrum& spectrum, Tails tails, double a, double b);

enum class PathKind { Affine, PiecewiseLinear };

class OperatorPath {
 public:
  static OperatorPath affine(Matrix a, Matrix b, Tails tails = {});
  static OperatorPath piecewise_linear(std::vector<double> knots, std::vector<Matrix> samples, Tails tails = {});
  static OperatorPath constant(const Matrix& a, Tails tails = {});

  PathKind kind() const noexcept { return kind_; }
  Tails tails() const noexcept { return tails_; }
  std::size_t dim() const noexcept { return dim_; }
  FSComponent component() const noexcept { return classify(tails_); }
  // Certified bound on ||block(l) - block(m)||_2 / |l - m|, recomputed on
  // construction.
  double lipschitz() const noexcept { return lipschitz_; }
  // Same bound restricted to [l, r]: the largest slope among linear pieces
  // meeting the interval.
  double lipschitz_on(double l, double r) const;

  // Affine coefficients (kind() == Affine).
  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }
  // Piecewise-linear data (kind() == PiecewiseLinear).
  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<Matrix>& samples() const noexcept { return samples_; }

  Matrix block_at(double lambda) const;
  CPS evaluate(double lambda) const { return CPS(block_at(lambda), tails_); }

  // Piecewise-linear form; affine paths become the two-knot path {0, 1}.
  OperatorPath as_piecewise_linear() const;

 private:
  OperatorPath() = default;
  void finish();

  PathKind kind_ = PathKind::Affine;
  Tails tails_;
  std::size_t dim_ = 0;
  double lipschitz_ = 0.0;
  std::vector<double> slopes_;  // per piece, piecewise-linear only
  Matrix a_, b_;
  std::vector<double> knots_;
  std::vector<Matrix> samples_;
};

// block(lambda) + (+I_m if plus tail) + (-I_m if minus tail); tails dropped.
OperatorPath compress(const OperatorPath& path, std::size_t m);

CPS direct_sum(const CPS& a, const CPS& b);
OperatorPath direct_sum(const OperatorPath& p, const OperatorPath& q);
// p on [0, 1/2], q on [1/2, 1]; requires ||p(1) - q(0)||_2 <= 1e-9.
OperatorPath concatenate(const OperatorPath& p, const OperatorPath& q);
// lambda -> p(1 - lambda)
OperatorPath reverse(const OperatorPath& p);
// lambda -> -p(lambda), tails swapped.
OperatorPath negate(const OperatorPath& p);
// p restricted to [s, t], rescaled to [0, 1].
OperatorPath restrict(const OperatorPath& p, double s, double t);
// lambda -> U^T p(lambda) U
OperatorPath congruence(const OperatorPath& p, const Matrix& u);
// Piecewise-linear path through the given blocks at the given knots.
OperatorPath sampled(const std::vector<double>& knots, const std::vector<Matrix>& blocks, Tails tails);

// Virtual representation of the negative eigenspace of a finite-dimensional,
// invertible operator. NotInvertible if some |eigenvalue| <= rel_tol_invert *
// (1 + ||block||).
VirtualRep morse_class(const CPS& op, const OrthogonalAction& action, const SpectralTolerances& tol = {});

// max over generators of ||rho(g) block - block rho(g)||_2.
double check_equivariance(const CPS& op, const OrthogonalAction& action);

}  // namespace sflow
