#pragma once

// Reference computations for the tests. They share no numerical code with
// the library: eigenvalue counts come from Householder tridiagonalization and
// Sturm sequences, isotypical components from the character formula and
// Gram-Schmidt.

#include <cmath>
#include <cstdint>
#include <vector>

#include "sflow/grouprep.hpp"
#include "sflow/operators.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const sflow::Matrix& m) {
  Dense d(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

// Householder reduction of a symmetric matrix to tridiagonal (diag, off).
inline void tridiagonalize(Dense a, std::vector<double>& diag, std::vector<double>& off) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 2 < n + 0 && n >= 3 && k < n - 2; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a[i][k] * a[i][k];
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a[k + 1][k] > 0) alpha = -alpha;
    std::vector<double> v(n, 0.0);
    v[k + 1] = a[k + 1][k] - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a[i][k];
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 == 0.0) continue;
    // a <- H a H with H = I - 2 v v^T / |v|^2
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p[i] += a[i][j] * v[j];
    for (double& x : p) x *= 2.0 / vnorm2;
    double vp = 0.0;
    for (std::size_t i = 0; i < n; ++i) vp += v[i] * p[i];
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] - (vp / vnorm2) * v[i];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= v[i] * q[j] + q[i] * v[j];
  }
  diag.assign(n, 0.0);
  off.assign(n > 0 ? n - 1 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i][i];
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = a[i + 1][i];
}

// Number of eigenvalues < x of a symmetric tridiagonal matrix (Sturm count).
inline std::size_t count_below(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

inline std::size_t negative_count(const Dense& a) {
  if (a.empty()) return 0;
  std::vector<double> d, e;
  tridiagonalize(a, d, e);
  return count_below(d, e, 0.0);
}

// Eigenvalues of a symmetric matrix by Sturm bisection, ascending.
inline std::vector<double> eigenvalues(const Dense& a) {
  const std::size_t n = a.size();
  std::vector<double> d, e;
  tridiagonalize(a, d, e);
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::abs(d[i]);
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < n) r += std::abs(e[i]);
    bound = std::max(bound, r);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    double lo = -bound - 1.0, hi = bound + 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (count_below(d, e, mid) > k ? hi : lo) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// Orthonormal basis of the column space (modified Gram-Schmidt, rank cut 1e-8).
inline Dense column_basis(const Dense& m) {
  const std::size_t n = m.size();
  Dense basis;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = m[i][j];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += b[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * b[i];
      }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (double& x : v) x /= norm;
    basis.push_back(v);
  }
  return basis;
}

inline sflow::Matrix frame(const Dense& columns, std::size_t dim) {
  sflow::Matrix f(dim, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) f.set_column(c, columns[c]);
  return f;
}

// Isotypical projector by the character formula; no symmetrization or fallback.
inline Dense isotypical(const sflow::OrthogonalAction& action, std::size_t nu) {
  const auto& g = action.group();
  const auto& irrep = g.table().irreps[nu];
  const std::size_t d = action.dim();
  Dense p(d, std::vector<double>(d, 0.0));
  const double scale = double(irrep.degree) / (double(g.order()) * irrep.schur_norm);
  for (std::size_t e = 0; e < g.order(); ++e) {
    const double chi = irrep.values[g.group().class_of[e]];
    const auto& r = action.matrix(e);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) p[i][j] += scale * chi * r(i, j);
  }
  return p;
}

// Multiplicities of the negative eigenspace of an equivariant symmetric block.
inline std::vector<std::int64_t> morse_multiplicities(const sflow::Matrix& block,
                                                      const sflow::OrthogonalAction& action) {
  const auto& irreps = action.group().table().irreps;
  const Dense l = to_dense(block);
  std::vector<std::int64_t> out;
  for (std::size_t nu = 0; nu < irreps.size(); ++nu) {
    const Dense q = column_basis(isotypical(action, nu));
    const std::size_t k = q.size();
    Dense r(k, std::vector<double>(k, 0.0));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t i = 0; i < l.size(); ++i)
          for (std::size_t j = 0; j < l.size(); ++j) r[a][b] += q[a][i] * l[i][j] * q[b][j];
    out.push_back(std::int64_t(negative_count(r)) / irreps[nu].degree);
  }
  return out;
}

// [E^-(L_0)] - [E^-(L_1)] on the block; tails carry the trivial action and cancel.
inline std::vector<std::int64_t> sfl_G(const sflow::OperatorPath& path, const sflow::OrthogonalAction& action) {
  auto m0 = morse_multiplicities(path.block_at(0.0), action);
  const auto m1 = morse_multiplicities(path.block_at(1.0), action);
  for (std::size_t i = 0; i < m0.size(); ++i) m0[i] -= m1[i];
  return m0;
}

inline std::int64_t sfl(const sflow::OperatorPath& path) {
  return std::int64_t(negative_count(to_dense(path.block_at(0.0)))) -
         std::int64_t(negative_count(to_dense(path.block_at(1.0))));
}

}  // namespace oracle
