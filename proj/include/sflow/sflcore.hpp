#pragma once

// Certified spectral flow. A partition 0 = l_0 < ... < l_N = 1 with levels
// a_i is accepted only if Weyl's inequality, applied with the path's
// Lipschitz constant, keeps every eigenvalue away from +-a_i on segment i.
// Each segment contributes [E(L(l_i), [0, a_i])] - [E(L(l_{i-1}), [0, a_i])]
// in RO(G); the classical spectral flow is its dimension.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sflow/grouprep.hpp"
#include "sflow/operators.hpp"

namespace sflow {

// Scale on which levels are chosen. Arctan measures eigenvalues through
// mu = arctan(e), the window spectrum of the boundary-value operator of the
// graph path; frames are then taken on [0, tan(a)].
enum class SpectralScale { Identity, Arctan };

struct PartitionOptions {
  int max_depth = 40;
  // Every segment is bisected at least this often; used to force finer
  // partitions when checking partition independence.
  int min_depth = 0;
  double margin_floor = 1e-7;
  SpectralTolerances tol;
  SpectralScale scale = SpectralScale::Identity;
};

struct CertifiedPartition {
  std::vector<double> knots;    // N + 1 values, 0 ... 1
  std::vector<double> levels;   // N values a_i > 0, on the partition's scale
  std::vector<double> margins;  // N values, distance of +-a_i from the envelope
  SpectralScale scale = SpectralScale::Identity;

  std::size_t segments() const noexcept { return levels.size(); }
};

struct Crossing {
  double left = 0.0;
  double right = 0.0;
  std::size_t segment = 0;
  VirtualRep cls;
};

struct SflReport {
  std::int64_t sfl = 0;
  VirtualRep sfl_G;
  CertifiedPartition partition;
  std::vector<VirtualRep> segment_contributions;
  std::vector<Crossing> crossings;
  bool certified = false;
};

CertifiedPartition find_partition(const OperatorPath& path, const PartitionOptions& opts = {});

SflReport sfl_G(const OperatorPath& path, const OrthogonalAction& action, const PartitionOptions& opts = {});
// Same computation with a given partition (levels are re-verified against the
// knot spectra, not re-searched).
SflReport sfl_G_with_partition(const OperatorPath& path, const OrthogonalAction& action,
                               const CertifiedPartition& partition, const PartitionOptions& opts = {});

// Classical spectral flow (trivial group).
std::int64_t sfl(const OperatorPath& path, const PartitionOptions& opts = {});

// [E^-(L^m_0)] - [E^-(L^m_1)] for the compression to block + m tail
// coordinates per tail; tail coordinates carry the trivial action.
VirtualRep morse_oracle_sfl_G(const OperatorPath& path, const OrthogonalAction& action, std::size_t m = 0,
                              const SpectralTolerances& tol = {});

// Throws EndpointNotInvertible naming lambda and the offending eigenvalue.
void require_invertible_endpoints(const OperatorPath& path, const SpectralTolerances& tol = {});

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::size_t instances = 0;
  std::string witness;  // first failure, empty when passed
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_passed() const;
};

// Executes (Z) zero on invertible paths, (C) concatenation additivity including
// p * reverse(p) = 0, (A) direct-sum additivity, (H) reparametrization
// homotopies and (O) conjugation by equivariant orthogonal U, all with exact
// integer comparisons. `paths` must be equivariant for `action` and have
// invertible endpoints.
AxiomReport verify_axioms(const std::vector<OperatorPath>& paths, const OrthogonalAction& action, std::uint64_t seed,
                          const PartitionOptions& opts = {});

}  // namespace sflow
