#include "sflow/random.hpp"

#include <cmath>
#include <limits>

#include "sflow/error.hpp"

namespace sflow {

double min_abs_eigenvalue(const Matrix& a) {
  if (a.rows() == 0) return std::numeric_limits<double>::infinity();
  double m = std::numeric_limits<double>::infinity();
  for (double e : eigh(a).values) m = std::min(m, std::abs(e));
  return m;
}

EquivariantSampler::EquivariantSampler(const OrthogonalAction& action, std::uint64_t seed)
    : action_(action), rng_(seed) {}

double EquivariantSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

std::size_t EquivariantSampler::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

Matrix EquivariantSampler::average(const Matrix& x) const {
  const std::size_t d = action_.dim();
  Matrix acc(d, d);
  for (const auto& g : action_.matrices()) acc += g.transpose() * x * g;
  return (1.0 / double(action_.matrices().size())) * acc;
}

Matrix EquivariantSampler::symmetric(double scale) {
  const std::size_t d = action_.dim();
  Matrix x(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) x(i, j) = x(j, i) = uniform(-scale, scale);
  return average(x).symmetrized();
}

Matrix EquivariantSampler::antisymmetric(double scale) {
  const std::size_t d = action_.dim();
  Matrix x(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      x(i, j) = uniform(-scale, scale);
      x(j, i) = -x(i, j);
    }
  Matrix y = average(x);
  return 0.5 * (y - y.transpose());
}

Matrix EquivariantSampler::orthogonal() {
  const std::size_t d = action_.dim();
  const Matrix x = antisymmetric(1.0);
  const Matrix id = Matrix::identity(d);
  Matrix u = solve(id + x, id - x);
  Matrix signs(d, d);
  for (std::size_t nu = 0; nu < action_.group().table().size(); ++nu) {
    const double s = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    signs += s * isotypical_projection(action_, nu);
  }
  return u * signs;
}

Matrix EquivariantSampler::invertible(double floor) {
  const Matrix y = symmetric(1.5);
  const auto eig = eigh(y);
  return spectral_function(eig, [floor](double e) { return e >= 0.0 ? e + floor : e - floor; }).symmetrized();
}

OperatorPath EquivariantSampler::path(Tails tails, bool piecewise, double gap) {
  const double scale = 1.5;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    if (!piecewise) {
      Matrix a = symmetric(scale);
      Matrix b = symmetric(2.0 * scale);
      if (min_abs_eigenvalue(a) >= gap && min_abs_eigenvalue(a + b) >= gap)
        return OperatorPath::affine(std::move(a), std::move(b), tails);
      continue;
    }
    const std::size_t interior = 1 + index(3);
    std::vector<double> knots{0.0};
    for (std::size_t k = 0; k < interior; ++k) knots.push_back(uniform(0.05, 0.95));
    knots.push_back(1.0);
    std::sort(knots.begin(), knots.end());
    bool spaced = true;
    for (std::size_t k = 1; k < knots.size(); ++k) spaced = spaced && knots[k] - knots[k - 1] > 0.02;
    if (!spaced) continue;
    std::vector<Matrix> samples;
    for (std::size_t k = 0; k < knots.size(); ++k) samples.push_back(symmetric(scale));
    if (min_abs_eigenvalue(samples.front()) >= gap && min_abs_eigenvalue(samples.back()) >= gap)
      return OperatorPath::piecewise_linear(std::move(knots), std::move(samples), tails);
  }
  throw Error(ErrorKind::NotInvertible, "could not sample a path with invertible endpoints");
}

OperatorPath EquivariantSampler::invertible_path(Tails tails) {
  Matrix c = invertible(1.0);
  Matrix b = symmetric(1.0);
  const double nb = spectral_norm(b);
  if (nb > 0.0) b *= 0.5 / nb;
  return OperatorPath::affine(std::move(c), std::move(b), tails);
}

OperatorPath EquivariantSampler::path_from(const Matrix& start, Tails tails, double gap) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix end = symmetric(1.5);
    if (min_abs_eigenvalue(end) >= gap) return OperatorPath::affine(start, end - start, tails);
  }
  throw Error(ErrorKind::NotInvertible, "could not sample an invertible endpoint");
}

}  // namespace sflow
