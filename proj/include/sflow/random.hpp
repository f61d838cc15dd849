#pragma once

// Seeded generators for equivariant test data: symmetric operators that
// commute with an action, equivariant orthogonal matrices and paths with
// invertible endpoints.

#include <cstdint>
#include <random>

#include "sflow/grouprep.hpp"
#include "sflow/operators.hpp"

namespace sflow {

class EquivariantSampler {
 public:
  EquivariantSampler(const OrthogonalAction& action, std::uint64_t seed);

  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);  // uniform in [0, n)
  std::mt19937_64& engine() noexcept { return rng_; }

  // Group average of a random symmetric matrix with entries in [-scale, scale].
  Matrix symmetric(double scale = 1.0);
  // Same for antisymmetric matrices.
  Matrix antisymmetric(double scale = 1.0);
  // Cayley transform of an equivariant antisymmetric matrix, times a random
  // sign per isotypical component.
  Matrix orthogonal();
  // Equivariant, with every eigenvalue of modulus >= floor.
  Matrix invertible(double floor = 1.0);

  // Affine or piecewise-linear path whose endpoints keep all eigenvalues at
  // distance >= gap from 0 (resampled until they do).
  OperatorPath path(Tails tails, bool piecewise, double gap = 0.05);
  // Path with every block invertible on [0, 1].
  OperatorPath invertible_path(Tails tails);
  // Path from `start` to a random invertible endpoint.
  OperatorPath path_from(const Matrix& start, Tails tails, double gap = 0.05);

  const OrthogonalAction& action() const noexcept { return action_; }

 private:
  Matrix average(const Matrix& x) const;

  OrthogonalAction action_;
  std::mt19937_64 rng_;
};

// min |eigenvalue| of a symmetric matrix (infinity for 0 x 0).
double min_abs_eigenvalue(const Matrix& a);

}  // namespace sflow
