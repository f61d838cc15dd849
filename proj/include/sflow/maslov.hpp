#pragma once

// Lagrangian frames in R^{2m} with J = [[0, -I], [I, 0]], graphs of symmetric
// operators over W = H x {0}, and the equivariant Maslov index of graph
// paths. The boundary-value operator u -> J u' on graph paths has window
// spectrum arctan(spec L), which is how it is evaluated here.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sflow/grouprep.hpp"
#include "sflow/operators.hpp"
#include "sflow/sflcore.hpp"

namespace sflow {

Matrix symplectic_j(std::size_t half_dim);

// Orthonormal frame of {(u, L u)}: [I; L](I + L^2)^{-1/2}. Throws NotSymmetric.
Matrix graph_lagrangian(const Matrix& l);
// Frame of W = H x {0}.
Matrix horizontal_lagrangian(std::size_t half_dim);

// Throws NotOrthonormal (defect > 1e-10).
bool is_lagrangian(const Matrix& frame);
// Spectral norm of P1 - P2. Throws NotOrthonormal.
double gap_distance(const Matrix& f1, const Matrix& f2);

struct FredholmPairDims {
  std::size_t intersection = 0;
  std::size_t codim_sum = 0;
};
FredholmPairDims fredholm_pair_dims(const Matrix& f, const Matrix& w);

struct WindowEigenspace {
  double mu = 0.0;
  Matrix frame;  // L-eigenspace of tan(mu), columns orthonormal
  std::size_t multiplicity() const noexcept { return frame.cols(); }
};

// Window spectrum of the boundary-value operator of graph(L) on (-pi/2, pi/2),
// clustered with the usual relative tolerance. Throws NotSymmetric.
std::vector<WindowEigenspace> maslov_operator_spectrum(const Matrix& l, double rel_tol_cluster = 1e-8);

// Eigenfunction of the boundary-value operator for eigenvalue mu built from
// u0 in the tan(mu)-eigenspace: u(t) = (cos(mu t) - sin(mu t) J)(u0, L u0).
std::vector<double> window_eigenfunction(const Matrix& l, double mu, const std::vector<double>& u0, double t);

struct MaslovReport {
  VirtualRep index;
  SflReport window;    // certified on the arctan scale
  SflReport operator_route;
};

// sfl_G of the window spectrum path, cross-checked against sfl_G(path).
// Throws InfiniteRank for paths with tails, EndpointNotInvertible,
// ConsistencyFailure when the routes disagree.
MaslovReport maslov_index_G(const OperatorPath& path, const OrthogonalAction& action,
                            const PartitionOptions& opts = {});

struct Z2Example {
  std::int64_t sfl_l = 0;
  std::pair<std::int64_t, std::int64_t> phi;
  std::pair<std::int64_t, std::int64_t> expected;
  VirtualRep sfl_g;
};

// L = diag(M, -M) with the Z2 action (u, v) -> (u, -v). Throws
// ConsistencyFailure if phi(sfl_Z2(L)) != (0, sfl(M)).
Z2Example z2_example(const OperatorPath& m_path, const PartitionOptions& opts = {});

}  // namespace sflow
