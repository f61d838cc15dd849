#include "sflow/cogredient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "sflow/error.hpp"

namespace sflow {

namespace {

constexpr double kPositiveMargin = 1e-8;
// Cover margins tried in turn; larger ones keep S well away from singular.
constexpr double kCoverMargins[] = {0.1, 1e-3, kPositiveMargin};

double min_eigenvalue(const Matrix& a) {
  if (a.rows() == 0) return 1.0;
  return eigh(a).values.front();
}

// Level in [1/4, 3/4] at the middle of the widest gap of the spectrum there.
double split_level(const std::vector<double>& values) {
  std::vector<double> points{0.25, 0.75};
  for (double v : values)
    if (v > 0.25 && v < 0.75) points.push_back(v);
  std::sort(points.begin(), points.end());
  double level = 0.5, width = -1.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i + 1] - points[i] > width) {
      width = points[i + 1] - points[i];
      level = 0.5 * (points[i] + points[i + 1]);
    }
  return level;
}

// K = P (L - I) P with P the spectral projection of L onto (-inf, level], so
// that L - K is at least min(level, 1) at the freezing point.
Matrix frozen_remainder(const Matrix& l) {
  const std::size_t d = l.rows();
  if (d == 0) return Matrix(0, 0);
  const auto eig = eigh(l);
  const double level = split_level(eig.values);
  Matrix p(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    if (eig.values[j] > level) continue;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) p(r, c) += eig.vectors(r, j) * eig.vectors(c, j);
  }
  return (p * (l - Matrix::identity(d)) * p).symmetrized();
}

}  // namespace

PositiveSplit split_positive(const CPS& op, double rel_tol_cluster) {
  if (op.component() != FSComponent::FSplus)
    throw Error(ErrorKind::NotFSplus, std::string("expected an FSplus operator, got ") + to_string(op.component()));
  const std::size_t d = op.dim();
  Matrix p_plus(d, d);
  if (d > 0) {
    const BlockSpectrum s = block_spectrum(op, rel_tol_cluster);
    for (const auto& c : s.clusters)
      if (c.value > s.tol_cluster) p_plus += projector(c.vectors);
  }
  const Matrix id = Matrix::identity(d);
  const Matrix p_rest = id - p_plus;
  Matrix s = (p_plus * op.block() * p_plus + p_rest).symmetrized();
  Matrix k = (p_rest * (op.block() - id) * p_rest).symmetrized();
  const double lowest = min_eigenvalue(s);
  if (!(lowest > 0.0)) {
    std::ostringstream os;
    os << "positive part has eigenvalue " << lowest;
    throw Error(ErrorKind::NotPositive, os.str());
  }
  return {CPS(std::move(s), Tails{true, false}), CPS(std::move(k), Tails{})};
}

Parametrix parametrix(const OperatorPath& input, std::size_t samples, const OrthogonalAction* action) {
  if (samples < 2) throw Error(ErrorKind::CoverFailure, "parametrix needs at least 2 samples");
  Parametrix out;
  OperatorPath path = input;
  switch (input.component()) {
    case FSComponent::FSplus:
      out.sign = 1;
      break;
    case FSComponent::FSminus:
      out.sign = -1;
      path = negate(input);
      break;
    default:
      throw Error(ErrorKind::NotFSplus, std::string("parametrix needs an FSplus or FSminus path, got ") +
                                            to_string(input.component()));
  }
  const std::size_t d = path.dim();
  const std::size_t n = samples;
  std::vector<double> grid(n);
  std::vector<Matrix> blocks(n);
  for (std::size_t j = 0; j < n; ++j) {
    grid[j] = j + 1 == n ? 1.0 : double(j) / double(n - 1);
    blocks[j] = path.block_at(grid[j]);
  }
  // Breakpoints: sample grid and path knots. Along each linear piece of
  // L - K the smallest eigenvalue is concave, so its superlevel sets there are
  // intervals and a margin between breakpoints follows from the ends.
  std::vector<double> breaks = grid;
  for (double knot : path.knots()) breaks.push_back(knot);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> candidates = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) candidates.push_back(0.5 * (breaks[i] + breaks[i + 1]));
  std::sort(candidates.begin(), candidates.end());

  struct Piece {
    double center, lo, hi;
    Matrix k;
  };
  std::vector<Matrix> frozen, frozen_zero;
  for (double c : candidates) {
    frozen.push_back(frozen_remainder(path.block_at(c)));
    frozen_zero.push_back(split_positive(CPS(path.block_at(c), path.tails())).remainder.block());
  }

  // Greedy cover by intervals on which L - K_c stays above `margin`.
  auto build_cover = [&](const std::vector<Matrix>& splits, double margin) -> std::optional<std::vector<Piece>> {
    auto margin_of = [&](const Matrix& k, double lambda) { return min_eigenvalue(path.block_at(lambda) - k); };
    // Farthest point towards `to` up to which L - K stays above the margin.
    auto walk = [&](const Matrix& k, double from, double to) {
      const bool right = to > from;
      std::vector<double> stops;
      for (double b : breaks)
        if (right ? (b > from && b < to) : (b < from && b > to)) stops.push_back(b);
      if (!right) std::reverse(stops.begin(), stops.end());
      stops.push_back(to);
      double at = from;
      for (double b : stops) {
        if (margin_of(k, b) <= margin) {
          double good = at, bad = b;
          for (int it = 0; it < 50 && std::abs(bad - good) > 1e-12; ++it) {
            const double mid = 0.5 * (good + bad);
            (margin_of(k, mid) > margin ? good : bad) = mid;
          }
          return good;
        }
        at = b;
      }
      return at;
    };
    std::vector<Piece> cover;
    double covered = 0.0;
    while (cover.empty() || covered < 1.0) {
      std::optional<Piece> best;
      for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        const double c = candidates[ci];
        const Matrix& k = splits[ci];
        if (margin_of(k, c) <= margin || margin_of(k, covered) <= margin) continue;
        // the margin must hold on the whole stretch between c and `covered`
        if (c > covered && walk(k, c, covered) > covered) continue;
        if (c < covered && walk(k, c, covered) < covered) continue;
        const double hi = walk(k, std::max(c, covered), 1.0);
        if (!best || hi > best->hi) best = Piece{c, 0.0, hi, k};
        if (best->hi >= 1.0) break;
      }
      if (best) best->lo = walk(best->k, best->center, 0.0);
      if (!best || (cover.empty() && best->lo > 0.0) || best->hi <= covered) return std::nullopt;
      covered = best->hi;
      cover.push_back(std::move(*best));
    }
    return cover;
  };
  // Positive definite paths keep K = 0.
  std::optional<std::vector<Piece>> found = build_cover(frozen_zero, kPositiveMargin);
  if (found && (found->size() != 1 || max_abs(found->front().k) != 0.0)) found.reset();
  for (double margin : kCoverMargins)
    if (!found && (found = build_cover(frozen, margin))) break;
  if (!found) {
    std::ostringstream os;
    os << "no positive cover of [0, 1] at " << n << " samples";
    throw Error(ErrorKind::CoverFailure, os.str());
  }
  const std::vector<Piece>& cover = *found;
  for (const auto& piece : cover) out.centers.push_back(piece.center);

  // Trapezoid partition of unity: weight moves from piece i to piece i + 1
  // on [ramp_lo[i], ramp_hi[i]], where both frozen splits are positive.
  std::vector<double> ramp_lo, ramp_hi;
  for (std::size_t i = 0; i + 1 < cover.size(); ++i) {
    ramp_lo.push_back(std::max(cover[i + 1].lo, i == 0 ? 0.0 : ramp_hi.back()));
    ramp_hi.push_back(cover[i].hi);
  }
  std::size_t piece = 0;
  for (std::size_t j = 0; j < n; ++j) {
    while (piece < ramp_hi.size() && grid[j] >= ramp_hi[piece]) ++piece;
    Matrix k = cover[piece].k;
    if (piece < ramp_lo.size() && grid[j] > ramp_lo[piece]) {
      const double w = (grid[j] - ramp_lo[piece]) / (ramp_hi[piece] - ramp_lo[piece]);
      k = ((1.0 - w) * k + w * cover[piece + 1].k).symmetrized();
    }
    const Matrix s = (blocks[j] - k).symmetrized();
    const auto eig = eigh(s);
    if (d > 0 && !(eig.values.front() > 0.0)) {
      std::ostringstream os;
      os << "blended positive part has eigenvalue " << eig.values.front() << " at lambda = " << grid[j];
      throw Error(ErrorKind::NotPositive, os.str());
    }
    Matrix m = spectral_function(eig, [](double e) { return 1.0 / std::sqrt(e); }).symmetrized();
    Matrix compact = (m.transpose() * k * m).symmetrized();
    if (out.sign < 0) compact = -compact;
    out.lambdas.push_back(grid[j]);
    out.m.push_back(std::move(m));
    out.k.push_back(std::move(compact));
    out.split_k.push_back(std::move(k));
  }
  if (action != nullptr) {
    const double comm = out.max_commutator(*action);
    if (comm > 1e-8) {
      std::ostringstream os;
      os << "parametrix commutator norm " << comm;
      throw Error(ErrorKind::NotEquivariant, os.str());
    }
  }
  return out;
}

double Parametrix::max_relative_residual(const OperatorPath& path) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const Matrix l = path.block_at(lambdas[j]);
    const Matrix lhs = m[j].transpose() * l * m[j];
    const Matrix rhs = double(sign) * Matrix::identity(l.rows()) + k[j];
    worst = std::max(worst, spectral_norm(lhs - rhs) / (1.0 + spectral_norm(l)));
  }
  return worst;
}

double Parametrix::max_commutator(const OrthogonalAction& action) const {
  double worst = 0.0;
  for (const auto& mj : m) worst = std::max(worst, commutator_norm(action, mj));
  return worst;
}

double Parametrix::min_singular_value() const {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& mj : m) {
    if (mj.rows() == 0) continue;
    lowest = std::min(lowest, std::sqrt(std::max(0.0, eigh(mj.transpose() * mj).values.front())));
  }
  return lowest;
}

OperatorPath Parametrix::transformed_path(const OperatorPath& path) const {
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    blocks.push_back(m[j].transpose() * path.block_at(lambdas[j]) * m[j]);
  return OperatorPath::piecewise_linear(lambdas, std::move(blocks), path.tails());
}

PointwiseSection pointwise_section(const CPS& op, double rel_tol_cluster) {
  if (op.component() != FSComponent::FSi)
    throw Error(ErrorKind::NotFSi, std::string("expected an FSi operator, got ") + to_string(op.component()));
  const std::size_t d = op.dim();
  PointwiseSection out;
  out.kernel_projection = Matrix(d, d);
  if (d == 0) {
    out.symmetry = CPS(Matrix(0, 0), op.tails());
    out.m = Matrix(0, 0);
    out.k = Matrix(0, 0);
    return out;
  }
  const BlockSpectrum s = block_spectrum(op, rel_tol_cluster);
  for (const auto& c : s.clusters)
    if (std::abs(c.value) <= s.tol_cluster) out.kernel_projection += projector(c.vectors);
  const Matrix v = (op.block() + out.kernel_projection).symmetrized();
  const auto eig = eigh(v);
  const Matrix q = spectral_function(eig, [](double e) { return e > 0.0 ? 1.0 : -1.0; }).symmetrized();
  out.m = spectral_function(eig, [](double e) { return std::sqrt(std::abs(e)); }).symmetrized();
  const Matrix mqm = out.m * q * out.m.transpose();
  out.k = (op.block() - mqm).symmetrized();
  out.symmetry = CPS(q, op.tails());
  out.residual = std::max(spectral_norm(mqm + out.k - op.block()), spectral_norm(mqm - v));
  if (out.residual > 1e-9 * (1.0 + s.block_norm)) {
    std::ostringstream os;
    os << "section residual " << out.residual;
    throw Error(ErrorKind::ResidualTooLarge, os.str());
  }
  return out;
}

}  // namespace sflow
