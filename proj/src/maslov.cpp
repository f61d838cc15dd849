#include "sflow/maslov.hpp"

#include <cmath>
#include <sstream>

#include "sflow/error.hpp"

namespace sflow {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kOrthonormalTol = 1e-10;
constexpr double kLagrangianTol = 1e-9;
constexpr double kIntersectionTol = 1e-8;

void require_symmetric(const Matrix& l) {
  if (l.rows() != l.cols()) throw Error(ErrorKind::NotSymmetric, "operator is not square");
  const double asym = asymmetry(l);
  if (asym > kSymmetryTol) {
    std::ostringstream os;
    os << "asymmetry " << asym;
    throw Error(ErrorKind::NotSymmetric, os.str());
  }
}

void require_orthonormal(const Matrix& f) {
  const double defect = orthonormality_defect(f);
  if (defect > kOrthonormalTol) {
    std::ostringstream os;
    os << "orthonormality defect " << defect;
    throw Error(ErrorKind::NotOrthonormal, os.str());
  }
}

}  // namespace

Matrix symplectic_j(std::size_t m) {
  Matrix j(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    j(i, m + i) = -1.0;
    j(m + i, i) = 1.0;
  }
  return j;
}

Matrix graph_lagrangian(const Matrix& l) {
  require_symmetric(l);
  const std::size_t m = l.rows();
  const Matrix ls = l.symmetrized();
  const auto eig = eigh(Matrix::identity(m) + ls * ls);
  const Matrix inv_root = spectral_function(eig, [](double e) { return 1.0 / std::sqrt(e); }).symmetrized();
  return vstack(inv_root, ls * inv_root);
}

Matrix horizontal_lagrangian(std::size_t m) { return vstack(Matrix::identity(m), Matrix(m, m)); }

bool is_lagrangian(const Matrix& f) {
  require_orthonormal(f);
  if (f.rows() != 2 * f.cols()) return false;
  const Matrix p = projector(f);
  return spectral_norm(p * symplectic_j(f.cols()) * p) <= kLagrangianTol;
}

double gap_distance(const Matrix& f1, const Matrix& f2) {
  require_orthonormal(f1);
  require_orthonormal(f2);
  if (f1.rows() != f2.rows()) throw Error(ErrorKind::DimMismatch, "frames live in different spaces");
  return spectral_norm(projector(f1) - projector(f2));
}

FredholmPairDims fredholm_pair_dims(const Matrix& f, const Matrix& w) {
  FredholmPairDims out;
  if (f.rows() != w.rows()) throw Error(ErrorKind::DimMismatch, "frames live in different spaces");
  // Singular values of f^T w are the cosines of the principal angles.
  const Matrix c = f.transpose() * w;
  for (double s2 : eigh(c.transpose() * c).values)
    if (1.0 - std::sqrt(std::max(0.0, s2)) <= kIntersectionTol) ++out.intersection;
  const Matrix both = hstack(f, w);
  std::size_t rank = 0;
  for (double e : eigh(both.transpose() * both).values)
    if (e > kIntersectionTol) ++rank;
  out.codim_sum = f.rows() - rank;
  return out;
}

std::vector<WindowEigenspace> maslov_operator_spectrum(const Matrix& l, double rel_tol_cluster) {
  require_symmetric(l);
  std::vector<WindowEigenspace> out;
  if (l.rows() == 0) return out;
  const BlockSpectrum s = block_spectrum(CPS(l, Tails{}), rel_tol_cluster);
  for (const auto& c : s.clusters) out.push_back({std::atan(c.value), c.vectors});
  return out;
}

std::vector<double> window_eigenfunction(const Matrix& l, double mu, const std::vector<double>& u0, double t) {
  const std::size_t m = l.rows();
  if (u0.size() != m) throw Error(ErrorKind::DimMismatch, "initial vector has the wrong size");
  std::vector<double> lu(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) lu[i] += l(i, k) * u0[k];
  const double c = std::cos(mu * t);
  const double s = std::sin(mu * t);
  // (cos - sin J)(x, y) = (c x + s y, c y - s x)
  std::vector<double> u(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = c * u0[i] + s * lu[i];
    u[m + i] = c * lu[i] - s * u0[i];
  }
  return u;
}

MaslovReport maslov_index_G(const OperatorPath& path, const OrthogonalAction& action, const PartitionOptions& opts) {
  if (path.component() != FSComponent::FiniteDim)
    throw Error(ErrorKind::InfiniteRank, "Maslov index is defined for finite graph paths without tails");
  require_invertible_endpoints(path, opts.tol);
  MaslovReport out;
  PartitionOptions window = opts;
  window.scale = SpectralScale::Arctan;
  out.window = sfl_G(path, action, window);
  PartitionOptions plain = opts;
  plain.scale = SpectralScale::Identity;
  out.operator_route = sfl_G(path, action, plain);
  if (!(out.window.sfl_G == out.operator_route.sfl_G)) {
    throw Error(ErrorKind::ConsistencyFailure, "Maslov index " + out.window.sfl_G.to_string() +
                                                   " differs from spectral flow " +
                                                   out.operator_route.sfl_G.to_string());
  }
  out.index = out.window.sfl_G;
  return out;
}

Z2Example z2_example(const OperatorPath& m_path, const PartitionOptions& opts) {
  if (m_path.component() != FSComponent::FiniteDim)
    throw Error(ErrorKind::InfiniteRank, "the Z2 example takes a finite path");
  const std::size_t k = m_path.dim();
  const OperatorPath l = direct_sum(m_path, negate(m_path));
  Matrix g = Matrix::identity(2 * k);
  for (std::size_t i = k; i < 2 * k; ++i) g(i, i) = -1.0;
  const auto action = OrthogonalAction::from_generators(cyclic_group(2), {{1, g}}, 2 * k);
  Z2Example out;
  const SflReport r = sfl_G(l, action, opts);
  out.sfl_g = r.sfl_G;
  out.sfl_l = r.sfl;
  out.phi = phi_z2(r.sfl_G);
  out.expected = {0, sfl(m_path, opts)};
  if (out.phi != out.expected || out.sfl_l != 0) {
    std::ostringstream os;
    os << "phi = (" << out.phi.first << ", " << out.phi.second << "), expected (" << out.expected.first << ", "
       << out.expected.second << ")";
    throw Error(ErrorKind::ConsistencyFailure, os.str());
  }
  return out;
}

}  // namespace sflow
