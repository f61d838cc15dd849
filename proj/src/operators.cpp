#include "sflow/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sflow/error.hpp"

namespace sflow {

const char* to_string(FSComponent c) noexcept {
  switch (c) {
    case FSComponent::FSplus: return "FSplus";
    case FSComponent::FSminus: return "FSminus";
    case FSComponent::FSi: return "FSi";
    case FSComponent::FiniteDim: return "FiniteDim";
  }
  return "?";
}

FSComponent classify(Tails tails) noexcept {
  if (tails.plus && tails.minus) return FSComponent::FSi;
  if (tails.plus) return FSComponent::FSplus;
  if (tails.minus) return FSComponent::FSminus;
  return FSComponent::FiniteDim;
}

CompactPerturbedSymmetry::CompactPerturbedSymmetry(Matrix block, Tails tails) : tails_(tails) {
  if (!block.square()) throw Error(ErrorKind::DimMismatch, "operator block must be square");
  block_ = block.symmetrized();
}

double CompactPerturbedSymmetry::norm() const { return spectral_norm(block_); }

BlockSpectrum block_spectrum(const CPS& op, double rel_tol_cluster) {
  BlockSpectrum out;
  if (op.dim() == 0) return out;
  const SymmetricEigen eig = eigh(op.block());
  out.eigenvalues = eig.values;
  out.block_norm = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  out.tol_cluster = rel_tol_cluster * (1.0 + out.block_norm);
  const std::size_t d = op.dim();
  std::size_t start = 0;
  while (start < d) {
    std::size_t end = start + 1;
    // Greedy on the sorted list: chain neighbours closer than the tolerance.
    while (end < d && eig.values[end] - eig.values[end - 1] <= out.tol_cluster) ++end;
    EigenCluster c;
    c.vectors = block(eig.vectors, 0, start, d, end - start);
    double sum = 0.0;
    for (std::size_t k = start; k < end; ++k) sum += eig.values[k];
    c.value = sum / double(end - start);
    out.clusters.push_back(std::move(c));
    start = end;
  }
  return out;
}

Matrix spectral_interval_frame(const BlockSpectrum& spectrum, Tails tails, double a, double b) {
  if ((tails.plus && a <= 1.0 && 1.0 <= b) || (tails.minus && a <= -1.0 && -1.0 <= b)) {
    std::ostringstream os;
    os << "interval [" << a << ", " << b << "] contains an essential-spectrum tail value";
    throw Error(ErrorKind::InfiniteRank, os.str());
  }
  std::size_t d = 0;
  std::size_t count = 0;
  for (const auto& c : spectrum.clusters) {
    d = c.vectors.rows();
    if (std::abs(c.value - a) <= spectrum.tol_cluster || std::abs(c.value - b) <= spectrum.tol_cluster) {
      std::ostringstream os;
      os << "eigenvalue " << c.value << " within " << spectrum.tol_cluster << " of the interval [" << a << ", " << b
         << "]";
      throw Error(ErrorKind::BoundaryHit, os.str());
    }
    if (a <= c.value && c.value <= b) count += c.multiplicity();
  }
  Matrix frame(d, count);
  std::size_t col = 0;
  for (const auto& c : spectrum.clusters) {
    if (c.value < a || c.value > b) continue;
    for (std::size_t k = 0; k < c.multiplicity(); ++k, ++col)
      for (std::size_t i = 0; i < d; ++i) frame(i, col) = c.vectors(i, k);
  }
  return frame;
}

Matrix spectral_interval_frame(const CPS& op, double a, double b, double rel_tol_cluster) {
  BlockSpectrum s = block_spectrum(op, rel_tol_cluster);
  if (op.dim() > 0) return spectral_interval_frame(s, op.tails(), a, b);
  spectral_interval_frame(s, op.tails(), a, b);  // tail check only
  return Matrix(0, 0);
}

// ---------------------------------------------------------------------------

OperatorPath OperatorPath::affine(Matrix a, Matrix b, Tails tails) {
  if (!a.square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimMismatch, "affine path needs square A and B of equal size");
  OperatorPath p;
  p.kind_ = PathKind::Affine;
  p.tails_ = tails;
  p.a_ = a.symmetrized();
  p.b_ = b.symmetrized();
  p.finish();
  return p;
}

OperatorPath OperatorPath::piecewise_linear(std::vector<double> knots, std::vector<Matrix> samples, Tails tails) {
  if (knots.size() < 2 || knots.size() != samples.size())
    throw Error(ErrorKind::DimMismatch, "piecewise-linear path needs >= 2 knots and one sample per knot");
  if (knots.front() != 0.0 || knots.back() != 1.0)
    throw Error(ErrorKind::OutOfRange, "knots must start at 0 and end at 1");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1])) throw Error(ErrorKind::OutOfRange, "knots must be strictly increasing");
  const std::size_t d = samples.front().rows();
  for (auto& s : samples) {
    if (!s.square() || s.rows() != d) throw Error(ErrorKind::DimMismatch, "samples must be square of equal size");
    s = s.symmetrized();
  }
  OperatorPath p;
  p.kind_ = PathKind::PiecewiseLinear;
  p.tails_ = tails;
  p.knots_ = std::move(knots);
  p.samples_ = std::move(samples);
  p.finish();
  return p;
}

OperatorPath OperatorPath::constant(const Matrix& a, Tails tails) {
  return affine(a, Matrix(a.rows(), a.cols()), tails);
}

void OperatorPath::finish() {
  if (kind_ == PathKind::Affine) {
    dim_ = a_.rows();
    lipschitz_ = spectral_norm(b_);
    return;
  }
  dim_ = samples_.front().rows();
  lipschitz_ = 0.0;
  slopes_.clear();
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    slopes_.push_back(spectral_norm(samples_[i + 1] - samples_[i]) / (knots_[i + 1] - knots_[i]));
    lipschitz_ = std::max(lipschitz_, slopes_.back());
  }
}

double OperatorPath::lipschitz_on(double l, double r) const {
  if (kind_ == PathKind::Affine) return lipschitz_;
  auto first = std::upper_bound(knots_.begin(), knots_.end(), l);
  std::size_t i = first == knots_.begin() ? 0 : std::size_t(first - knots_.begin()) - 1;
  double slope = 0.0;
  for (; i < slopes_.size() && knots_[i] < r; ++i) slope = std::max(slope, slopes_[i]);
  if (l == r && i < slopes_.size()) slope = std::max(slope, slopes_[i]);
  return slope;
}

Matrix OperatorPath::block_at(double lambda) const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    std::ostringstream os;
    os << "lambda = " << lambda << " outside [0, 1]";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  if (kind_ == PathKind::Affine) return (a_ + lambda * b_).symmetrized();
  if (lambda == 1.0) return samples_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), lambda);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (lambda == knots_[i]) return samples_[i];
  const double w = (lambda - knots_[i]) / (knots_[i + 1] - knots_[i]);
  return ((1.0 - w) * samples_[i] + w * samples_[i + 1]).symmetrized();
}

OperatorPath OperatorPath::as_piecewise_linear() const {
  if (kind_ == PathKind::PiecewiseLinear) return *this;
  return piecewise_linear({0.0, 1.0}, {a_, a_ + b_}, tails_);
}

namespace {

std::vector<double> merged_knots(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> out(x);
  out.insert(out.end(), y.begin(), y.end());
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double t : out)
    if (uniq.empty() || t - uniq.back() > 1e-14) uniq.push_back(t);
  uniq.back() = 1.0;
  return uniq;
}

Matrix tail_block(std::size_t m, Tails tails) {
  Matrix t(0, 0);
  if (tails.plus) t = block_diagonal(t, Matrix::identity(m));
  if (tails.minus) t = block_diagonal(t, -Matrix::identity(m));
  return t;
}

}  // namespace

OperatorPath compress(const OperatorPath& path, std::size_t m) {
  const Tails tails = path.tails();
  if (!tails.plus && !tails.minus) return path;
  const Matrix extra = tail_block(m, tails);
  if (path.kind() == PathKind::Affine)
    return OperatorPath::affine(block_diagonal(path.a(), extra), block_diagonal(path.b(), Matrix(extra.rows(), extra.cols())));
  std::vector<Matrix> samples;
  for (const auto& s : path.samples()) samples.push_back(block_diagonal(s, extra));
  return OperatorPath::piecewise_linear(path.knots(), std::move(samples));
}

CPS direct_sum(const CPS& a, const CPS& b) {
  return CPS(block_diagonal(a.block(), b.block()),
             Tails{a.tails().plus || b.tails().plus, a.tails().minus || b.tails().minus});
}

OperatorPath direct_sum(const OperatorPath& p, const OperatorPath& q) {
  const Tails tails{p.tails().plus || q.tails().plus, p.tails().minus || q.tails().minus};
  if (p.kind() == PathKind::Affine && q.kind() == PathKind::Affine)
    return OperatorPath::affine(block_diagonal(p.a(), q.a()), block_diagonal(p.b(), q.b()), tails);
  const auto pp = p.as_piecewise_linear();
  const auto qq = q.as_piecewise_linear();
  const auto knots = merged_knots(pp.knots(), qq.knots());
  std::vector<Matrix> samples;
  for (double t : knots) samples.push_back(block_diagonal(pp.block_at(t), qq.block_at(t)));
  return OperatorPath::piecewise_linear(knots, std::move(samples), tails);
}

OperatorPath concatenate(const OperatorPath& p, const OperatorPath& q) {
  if (p.tails() != q.tails()) throw Error(ErrorKind::TailMismatch, "concatenated paths must share tails");
  if (p.dim() != q.dim()) throw Error(ErrorKind::DimMismatch, "concatenated paths must share the block dimension");
  const double gap = spectral_norm(p.block_at(1.0) - q.block_at(0.0));
  if (gap > 1e-9) {
    std::ostringstream os;
    os << "||p(1) - q(0)|| = " << gap;
    throw Error(ErrorKind::EndpointMismatch, os.str());
  }
  const auto pp = p.as_piecewise_linear();
  const auto qq = q.as_piecewise_linear();
  std::vector<double> knots;
  std::vector<Matrix> samples;
  for (std::size_t i = 0; i < pp.knots().size(); ++i) {
    knots.push_back(0.5 * pp.knots()[i]);
    samples.push_back(pp.samples()[i]);
  }
  for (std::size_t i = 1; i < qq.knots().size(); ++i) {
    knots.push_back(0.5 + 0.5 * qq.knots()[i]);
    samples.push_back(qq.samples()[i]);
  }
  knots.back() = 1.0;
  return OperatorPath::piecewise_linear(std::move(knots), std::move(samples), p.tails());
}

OperatorPath reverse(const OperatorPath& p) {
  if (p.kind() == PathKind::Affine) return OperatorPath::affine(p.a() + p.b(), -p.b(), p.tails());
  const std::size_t n = p.knots().size();
  std::vector<double> knots(n);
  std::vector<Matrix> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    knots[i] = 1.0 - p.knots()[n - 1 - i];
    samples[i] = p.samples()[n - 1 - i];
  }
  knots.front() = 0.0;
  knots.back() = 1.0;
  return OperatorPath::piecewise_linear(std::move(knots), std::move(samples), p.tails());
}

OperatorPath negate(const OperatorPath& p) {
  const Tails swapped{p.tails().minus, p.tails().plus};
  if (p.kind() == PathKind::Affine) return OperatorPath::affine(-p.a(), -p.b(), swapped);
  std::vector<Matrix> samples;
  for (const auto& s : p.samples()) samples.push_back(-s);
  return OperatorPath::piecewise_linear(p.knots(), std::move(samples), swapped);
}

OperatorPath restrict(const OperatorPath& p, double s, double t) {
  if (!(0.0 <= s && s < t && t <= 1.0)) throw Error(ErrorKind::OutOfRange, "restrict needs 0 <= s < t <= 1");
  if (p.kind() == PathKind::Affine) return OperatorPath::affine(p.a() + s * p.b(), (t - s) * p.b(), p.tails());
  std::vector<double> knots{0.0};
  std::vector<Matrix> samples{p.block_at(s)};
  for (std::size_t i = 0; i < p.knots().size(); ++i) {
    const double k = p.knots()[i];
    if (k > s && k < t) {
      const double r = (k - s) / (t - s);
      if (r - knots.back() > 1e-14 && 1.0 - r > 1e-14) {
        knots.push_back(r);
        samples.push_back(p.samples()[i]);
      }
    }
  }
  knots.push_back(1.0);
  samples.push_back(p.block_at(t));
  return OperatorPath::piecewise_linear(std::move(knots), std::move(samples), p.tails());
}

OperatorPath congruence(const OperatorPath& p, const Matrix& u) {
  const Matrix ut = u.transpose();
  if (p.kind() == PathKind::Affine) return OperatorPath::affine(ut * p.a() * u, ut * p.b() * u, p.tails());
  std::vector<Matrix> samples;
  for (const auto& s : p.samples()) samples.push_back(ut * s * u);
  return OperatorPath::piecewise_linear(p.knots(), std::move(samples), p.tails());
}

OperatorPath sampled(const std::vector<double>& knots, const std::vector<Matrix>& blocks, Tails tails) {
  return OperatorPath::piecewise_linear(knots, blocks, tails);
}

VirtualRep morse_class(const CPS& op, const OrthogonalAction& action, const SpectralTolerances& tol) {
  if (op.component() != FSComponent::FiniteDim)
    throw Error(ErrorKind::InfiniteRank, std::string("Morse class needs a finite-dimensional operator, got ") +
                                             to_string(op.component()));
  if (action.dim() != op.dim())
    throw Error(ErrorKind::DimMismatch, "action dimension " + std::to_string(action.dim()) + " vs operator dimension " +
                                            std::to_string(op.dim()));
  if (op.dim() == 0) return VirtualRep::zero(action.group_handle());
  const BlockSpectrum s = block_spectrum(op, tol.cluster);
  const double tol_invert = tol.invert * (1.0 + s.block_norm);
  for (double e : s.eigenvalues) {
    if (std::abs(e) <= tol_invert) {
      std::ostringstream os;
      os << "eigenvalue " << e << " within " << tol_invert << " of 0";
      throw Error(ErrorKind::NotInvertible, os.str());
    }
  }
  const double comm = check_equivariance(op, action);
  if (comm > 1e-8 * (1.0 + s.block_norm)) {
    std::ostringstream os;
    os << "operator commutator norm " << comm;
    throw Error(ErrorKind::NotEquivariant, os.str());
  }
  std::size_t count = 0;
  for (const auto& c : s.clusters)
    if (c.value < 0.0) count += c.multiplicity();
  Matrix frame(op.dim(), count);
  std::size_t col = 0;
  for (const auto& c : s.clusters) {
    if (c.value >= 0.0) continue;
    for (std::size_t k = 0; k < c.multiplicity(); ++k, ++col)
      for (std::size_t i = 0; i < op.dim(); ++i) frame(i, col) = c.vectors(i, k);
  }
  return multiplicity_vector(character_of_subspace(action, frame), action.group_handle());
}

double check_equivariance(const CPS& op, const OrthogonalAction& action) {
  return commutator_norm(action, op.block());
}

}  // namespace sflow
