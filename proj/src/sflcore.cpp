#include "sflow/sflcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "sflow/error.hpp"
#include "sflow/random.hpp"

namespace sflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double warp(SpectralScale s, double e) { return s == SpectralScale::Identity ? e : std::atan(e); }
double unwarp(SpectralScale s, double a) { return s == SpectralScale::Identity ? a : std::tan(a); }

struct Interval {
  double lo;
  double hi;
};

class SpectrumCache {
 public:
  SpectrumCache(const OperatorPath& path, double rel_cluster) : path_(path), rel_cluster_(rel_cluster) {}

  const BlockSpectrum& at(double lambda) {
    auto it = cache_.find(lambda);
    if (it == cache_.end()) it = cache_.emplace(lambda, block_spectrum(path_.evaluate(lambda), rel_cluster_)).first;
    return it->second;
  }

 private:
  const OperatorPath& path_;
  double rel_cluster_;
  std::map<double, BlockSpectrum> cache_;
};

// Minimum |eigenvalue| required at interior knots, so that [0, a] frames are
// well defined there.
double knot_guard(const BlockSpectrum& s) { return std::max(1e-7, 2.0 * s.tol_cluster); }

bool regular_knot(const BlockSpectrum& s) {
  const double guard = knot_guard(s);
  return std::all_of(s.eigenvalues.begin(), s.eigenvalues.end(), [&](double e) { return std::abs(e) > guard; });
}

// |warp(x)| over x in [lo, hi] as an interval of [0, inf).
Interval abs_image(SpectralScale scale, double lo, double hi) {
  const double wlo = warp(scale, lo);
  const double whi = warp(scale, hi);
  if (wlo <= 0.0 && whi >= 0.0) return {0.0, std::max(-wlo, whi)};
  return {std::min(std::abs(wlo), std::abs(whi)), std::max(std::abs(wlo), std::abs(whi))};
}

struct SegmentEvidence {
  std::vector<Interval> forbidden;  // merged, ascending
  double cap = kInf;                // levels must stay below
};

SegmentEvidence envelope(const OperatorPath& path, double l, double r, SpectrumCache& cache, SpectralScale scale) {
  const double mid = 0.5 * (l + r);
  const BlockSpectrum& sl = cache.at(l);
  const BlockSpectrum& sr = cache.at(r);
  const BlockSpectrum& sm = cache.at(mid);
  // Weyl: |e_k(lambda) - e_k(mid)| <= L_loc * |lambda - mid| with the local
  // Lipschitz bound; the slack covers eigensolver rounding.
  const double h = path.lipschitz_on(l, r) * 0.5 * (r - l) * (1.0 + 1e-12) + 1e-12 * (1.0 + sm.block_norm);
  std::vector<Interval> raw;
  for (double e : sm.eigenvalues) raw.push_back(abs_image(scale, e - h, e + h));
  for (double e : sl.eigenvalues) raw.push_back(abs_image(scale, e, e));
  for (double e : sr.eigenvalues) raw.push_back(abs_image(scale, e, e));
  SegmentEvidence ev;
  const Tails tails = path.tails();
  if (tails.plus || tails.minus) {
    const double t = warp(scale, 1.0);
    raw.push_back({t, t});
    ev.cap = t;
  } else if (scale == SpectralScale::Arctan) {
    ev.cap = std::numbers::pi / 2.0;
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : raw) {
    if (!ev.forbidden.empty() && iv.lo <= ev.forbidden.back().hi)
      ev.forbidden.back().hi = std::max(ev.forbidden.back().hi, iv.hi);
    else
      ev.forbidden.push_back(iv);
  }
  return ev;
}

double distance_to_forbidden(const SegmentEvidence& ev, double a) {
  double m = kInf;
  for (const auto& iv : ev.forbidden) {
    if (a >= iv.lo && a <= iv.hi) return 0.0;
    m = std::min(m, std::min(std::abs(a - iv.lo), std::abs(a - iv.hi)));
  }
  if (std::isfinite(ev.cap)) m = std::min(m, ev.cap - a);
  return m;
}

std::size_t count_within(const BlockSpectrum& s, SpectralScale scale, double a) {
  std::size_t n = 0;
  for (double e : s.eigenvalues)
    if (std::abs(warp(scale, e)) <= a) ++n;
  return n;
}

// Checks a level against the envelope and the knot spectra; returns the
// margin, or a negative number when the level is not admissible.
double level_margin(double l, double r, double a, SpectrumCache& cache,
                    const PartitionOptions& opts, const SegmentEvidence& ev) {
  if (!(a > 0.0) || !(a < ev.cap)) return -1.0;
  const double margin = distance_to_forbidden(ev, a);
  if (!(margin > opts.margin_floor)) return -1.0;
  const double mid = 0.5 * (l + r);
  const BlockSpectrum& sl = cache.at(l);
  const BlockSpectrum& sm = cache.at(mid);
  const BlockSpectrum& sr = cache.at(r);
  const std::size_t n = count_within(sl, opts.scale, a);
  if (count_within(sm, opts.scale, a) != n || count_within(sr, opts.scale, a) != n) return -1.0;
  const double level = unwarp(opts.scale, a);
  for (const BlockSpectrum* s : {&sl, &sr})
    for (double e : s->eigenvalues)
      if (std::abs(std::abs(e) - level) <= s->tol_cluster) return -1.0;
  return margin;
}

struct Certificate {
  double level;
  double margin;
};

std::optional<Certificate> certify(const OperatorPath& path, double l, double r, SpectrumCache& cache,
                                   const PartitionOptions& opts) {
  const SegmentEvidence ev = envelope(path, l, r, cache, opts.scale);
  const double top = ev.forbidden.empty() ? 0.0 : ev.forbidden.back().hi;
  const double upper = std::isfinite(ev.cap) ? ev.cap : top + 1.0;
  // Gaps of (0, upper) minus the forbidden set; widest wins, ties go to the
  // smaller level.
  double best_lo = 0.0;
  double best_hi = 0.0;
  double cursor = 0.0;
  auto consider = [&](double lo, double hi) {
    if (hi - lo > best_hi - best_lo) {
      best_lo = lo;
      best_hi = hi;
    }
  };
  for (const auto& iv : ev.forbidden) {
    if (iv.lo >= upper) break;
    if (iv.lo > cursor) consider(cursor, iv.lo);
    cursor = std::max(cursor, iv.hi);
  }
  if (cursor < upper) consider(cursor, upper);
  if (!(0.5 * (best_hi - best_lo) > opts.margin_floor)) return std::nullopt;
  const double a = 0.5 * (best_lo + best_hi);
  const double margin = level_margin(l, r, a, cache, opts, ev);
  if (margin < 0.0) return std::nullopt;
  return Certificate{a, margin};
}

double choose_split(double l, double r, SpectrumCache& cache) {
  static constexpr double kFractions[] = {0.5, 0.4, 0.6, 0.3, 0.7, 0.45, 0.55, 0.35, 0.65, 0.25, 0.75, 0.2, 0.8};
  for (double f : kFractions) {
    const double t = l + f * (r - l);
    if (t <= l || t >= r) continue;
    if (regular_knot(cache.at(t))) return t;
  }
  std::ostringstream os;
  os << "no regular split point in [" << l << ", " << r << "]: an eigenvalue stays at 0";
  throw Error(ErrorKind::CertificationFailed, os.str());
}

class PartitionSearch {
 public:
  PartitionSearch(const OperatorPath& path, const PartitionOptions& opts)
      : path_(path), opts_(opts), cache_(path, opts.tol.cluster) {}

  CertifiedPartition run() {
    out_.scale = opts_.scale;
    out_.knots.push_back(0.0);
    search(0.0, 1.0, 0);
    return std::move(out_);
  }

  SpectrumCache& cache() { return cache_; }

 private:
  void search(double l, double r, int depth) {
    if (depth >= opts_.min_depth) {
      if (auto cert = certify(path_, l, r, cache_, opts_)) {
        out_.knots.push_back(r);
        out_.levels.push_back(cert->level);
        out_.margins.push_back(cert->margin);
        return;
      }
    }
    if (depth >= opts_.max_depth) {
      std::ostringstream os;
      os << "no certified level on [" << l << ", " << r << "] (width " << (r - l) << ") at depth " << depth;
      throw Error(ErrorKind::CertificationFailed, os.str());
    }
    const double t = choose_split(l, r, cache_);
    search(l, t, depth + 1);
    search(t, r, depth + 1);
  }

  const OperatorPath& path_;
  PartitionOptions opts_;
  SpectrumCache cache_;
  CertifiedPartition out_;
};

// Frame of the eigenvectors with eigenvalue in [0, level]. Clusters must not
// straddle 0; `zero_tol` is the invertibility tolerance at this knot.
Matrix level_frame(const BlockSpectrum& s, double level, double zero_tol, std::size_t dim) {
  std::size_t count = 0;
  std::vector<const EigenCluster*> picked;
  for (const auto& c : s.clusters) {
    if (std::abs(c.value) <= zero_tol) {
      std::ostringstream os;
      os << "eigenvalue " << c.value << " at a partition knot is within " << zero_tol << " of 0";
      throw Error(ErrorKind::BoundaryHit, os.str());
    }
    if (c.value >= 0.0 && c.value <= level) {
      picked.push_back(&c);
      count += c.multiplicity();
    }
  }
  Matrix frame(dim, count);
  std::size_t col = 0;
  for (const EigenCluster* c : picked)
    for (std::size_t k = 0; k < c->multiplicity(); ++k, ++col)
      for (std::size_t i = 0; i < dim; ++i) frame(i, col) = c->vectors(i, k);
  return frame;
}

void check_action_dim(const OperatorPath& path, const OrthogonalAction& action) {
  if (action.dim() != path.dim())
    throw Error(ErrorKind::DimMismatch, "action dimension " + std::to_string(action.dim()) + " vs block dimension " +
                                            std::to_string(path.dim()));
}

void check_equivariant_at(const OperatorPath& path, const OrthogonalAction& action, double lambda) {
  const CPS op = path.evaluate(lambda);
  const double comm = check_equivariance(op, action);
  const double tol = 1e-8 * (1.0 + op.norm());
  if (comm > tol) {
    std::ostringstream os;
    os << "commutator norm " << comm << " at lambda = " << lambda << " exceeds " << tol;
    throw Error(ErrorKind::NotEquivariant, os.str());
  }
}

SflReport assemble(const OperatorPath& path, const OrthogonalAction& action, CertifiedPartition partition,
                   SpectrumCache& cache, const PartitionOptions& opts) {
  const GroupHandle& group = action.group_handle();
  SflReport rep;
  rep.sfl_G = VirtualRep::zero(group);
  const std::size_t n = partition.segments();
  auto zero_tol = [&](double lambda, const BlockSpectrum& s) {
    const bool endpoint = lambda == 0.0 || lambda == 1.0;
    return endpoint ? opts.tol.invert * (1.0 + s.block_norm) : s.tol_cluster;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double l = partition.knots[i];
    const double r = partition.knots[i + 1];
    check_equivariant_at(path, action, l);
    check_equivariant_at(path, action, 0.5 * (l + r));
    const double level = unwarp(opts.scale, partition.levels[i]);
    const BlockSpectrum& sl = cache.at(l);
    const BlockSpectrum& sr = cache.at(r);
    const Matrix fl = level_frame(sl, level, zero_tol(l, sl), path.dim());
    const Matrix fr = level_frame(sr, level, zero_tol(r, sr), path.dim());
    const VirtualRep right = multiplicity_vector(character_of_subspace(action, fr), group);
    const VirtualRep left = multiplicity_vector(character_of_subspace(action, fl), group);
    VirtualRep contribution = right - left;
    if (!contribution.is_zero()) rep.crossings.push_back(Crossing{l, r, i, contribution});
    rep.sfl_G = rep.sfl_G + contribution;
    rep.segment_contributions.push_back(std::move(contribution));
  }
  check_equivariant_at(path, action, 1.0);
  rep.sfl = forgetful(rep.sfl_G);
  rep.partition = std::move(partition);
  rep.certified = true;
  return rep;
}

}  // namespace

void require_invertible_endpoints(const OperatorPath& path, const SpectralTolerances& tol) {
  for (double lambda : {0.0, 1.0}) {
    const BlockSpectrum s = block_spectrum(path.evaluate(lambda), tol.cluster);
    const double threshold = tol.invert * (1.0 + s.block_norm);
    for (double e : s.eigenvalues) {
      if (std::abs(e) <= threshold) {
        std::ostringstream os;
        os << "operator at lambda = " << lambda << " has eigenvalue " << e << " (|e| <= " << threshold << ")";
        throw Error(ErrorKind::EndpointNotInvertible, os.str());
      }
    }
  }
}

CertifiedPartition find_partition(const OperatorPath& path, const PartitionOptions& opts) {
  require_invertible_endpoints(path, opts.tol);
  return PartitionSearch(path, opts).run();
}

SflReport sfl_G(const OperatorPath& path, const OrthogonalAction& action, const PartitionOptions& opts) {
  check_action_dim(path, action);
  require_invertible_endpoints(path, opts.tol);
  PartitionSearch search(path, opts);
  CertifiedPartition partition = search.run();
  return assemble(path, action, std::move(partition), search.cache(), opts);
}

SflReport sfl_G_with_partition(const OperatorPath& path, const OrthogonalAction& action,
                               const CertifiedPartition& partition, const PartitionOptions& opts) {
  check_action_dim(path, action);
  require_invertible_endpoints(path, opts.tol);
  if (partition.knots.size() != partition.levels.size() + 1 || partition.knots.front() != 0.0 ||
      partition.knots.back() != 1.0)
    throw Error(ErrorKind::CertificationFailed, "malformed partition");
  PartitionOptions o = opts;
  o.scale = partition.scale;
  SpectrumCache cache(path, o.tol.cluster);
  CertifiedPartition checked = partition;
  for (std::size_t i = 0; i < partition.segments(); ++i) {
    const double l = partition.knots[i];
    const double r = partition.knots[i + 1];
    if (!(r > l)) throw Error(ErrorKind::CertificationFailed, "knots are not increasing");
    const SegmentEvidence ev = envelope(path, l, r, cache, o.scale);
    const double margin = level_margin(l, r, partition.levels[i], cache, o, ev);
    if (margin < 0.0) {
      std::ostringstream os;
      os << "level " << partition.levels[i] << " is not certified on [" << l << ", " << r << "]";
      throw Error(ErrorKind::CertificationFailed, os.str());
    }
    if (i > 0 && !regular_knot(cache.at(l))) {
      std::ostringstream os;
      os << "knot " << l << " has an eigenvalue too close to 0";
      throw Error(ErrorKind::CertificationFailed, os.str());
    }
    checked.margins.resize(partition.segments());
    checked.margins[i] = margin;
  }
  return assemble(path, action, std::move(checked), cache, o);
}

std::int64_t sfl(const OperatorPath& path, const PartitionOptions& opts) {
  return sfl_G(path, OrthogonalAction::trivial(trivial_group(), path.dim()), opts).sfl;
}

VirtualRep morse_oracle_sfl_G(const OperatorPath& path, const OrthogonalAction& action, std::size_t m,
                              const SpectralTolerances& tol) {
  check_action_dim(path, action);
  const Tails tails = path.tails();
  const std::size_t extra = m * (std::size_t(tails.plus) + std::size_t(tails.minus));
  const OperatorPath finite = compress(path, m);
  const OrthogonalAction ext = action.extended(extra);
  const VirtualRep start = morse_class(finite.evaluate(0.0), ext, tol);
  const VirtualRep end = morse_class(finite.evaluate(1.0), ext, tol);
  return start - end;
}

// ---------------------------------------------------------------------------

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

namespace {

class AxiomRecorder {
 public:
  explicit AxiomRecorder(std::string name) { result_.name = std::move(name); }

  template <class Check>
  void run(const std::string& context, Check&& check) {
    ++result_.instances;
    std::string failure;
    try {
      failure = check();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (!failure.empty() && result_.passed) {
      result_.passed = false;
      result_.witness = context + ": " + failure;
    }
  }

  AxiomResult result() const { return result_; }

 private:
  AxiomResult result_;
};

std::string expect_equal(const VirtualRep& got, const VirtualRep& want) {
  if (got == want) return {};
  return "got " + got.to_string() + ", expected " + want.to_string();
}

// lambda + beta sin(pi lambda) / pi is increasing for |beta| < 1.
OperatorPath reparametrized(const OperatorPath& p, double beta, std::size_t samples) {
  std::vector<double> knots;
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k <= samples; ++k) {
    const double t = double(k) / double(samples);
    const double phi = std::clamp(t + beta * std::sin(std::numbers::pi * t) / std::numbers::pi, 0.0, 1.0);
    knots.push_back(t);
    blocks.push_back(p.block_at(k == samples ? 1.0 : (k == 0 ? 0.0 : phi)));
  }
  return OperatorPath::piecewise_linear(std::move(knots), std::move(blocks), p.tails());
}

OperatorPath straight_line(const OperatorPath& p, const OperatorPath& q, double s) {
  const auto pp = p.as_piecewise_linear();
  const auto qq = q.as_piecewise_linear();
  std::vector<double> knots(pp.knots());
  knots.insert(knots.end(), qq.knots().begin(), qq.knots().end());
  std::sort(knots.begin(), knots.end());
  std::vector<double> uniq;
  for (double t : knots)
    if (uniq.empty() || t - uniq.back() > 1e-12) uniq.push_back(t);
  uniq.back() = 1.0;
  std::vector<Matrix> blocks;
  for (double t : uniq) blocks.push_back((1.0 - s) * pp.block_at(t) + s * qq.block_at(t));
  return OperatorPath::piecewise_linear(std::move(uniq), std::move(blocks), p.tails());
}

}  // namespace

AxiomReport verify_axioms(const std::vector<OperatorPath>& paths, const OrthogonalAction& action, std::uint64_t seed,
                          const PartitionOptions& opts) {
  EquivariantSampler sampler(action, seed);
  AxiomRecorder zero("Z"), concat("C"), additive("A"), homotopy("H"), orthogonal("O");
  const GroupHandle& group = action.group_handle();

  for (std::size_t i = 0; i < paths.size(); ++i) {
    const OperatorPath& p = paths[i];
    const std::string ctx = "path " + std::to_string(i);
    VirtualRep base;
    try {
      base = sfl_G(p, action, opts).sfl_G;
    } catch (const std::exception& e) {
      AxiomRecorder* all[] = {&zero, &concat, &additive, &homotopy, &orthogonal};
      for (auto* rec : all) rec->run(ctx, [&] { return std::string("base computation failed: ") + e.what(); });
      continue;
    }
    const VirtualRep none = VirtualRep::zero(group);

    zero.run(ctx + " invertible path", [&] {
      return expect_equal(sfl_G(sampler.invertible_path(p.tails()), action, opts).sfl_G, none);
    });
    zero.run(ctx + " constant path", [&] {
      return expect_equal(sfl_G(OperatorPath::constant(p.block_at(0.0), p.tails()), action, opts).sfl_G, none);
    });

    concat.run(ctx + " loop p*reverse(p)", [&] {
      return expect_equal(sfl_G(concatenate(p, reverse(p)), action, opts).sfl_G, none);
    });
    concat.run(ctx + " split", [&] {
      double t = -1.0;
      for (int k = 0; k < 20 && t < 0.0; ++k) {
        const double c = sampler.uniform(0.25, 0.75);
        if (min_abs_eigenvalue(p.block_at(c)) > 1e-3) t = c;
      }
      if (t < 0.0) return std::string();  // no regular split point found; nothing to check
      const auto left = sfl_G(restrict(p, 0.0, t), action, opts).sfl_G;
      const auto right = sfl_G(restrict(p, t, 1.0), action, opts).sfl_G;
      const auto joined = sfl_G(concatenate(restrict(p, 0.0, t), restrict(p, t, 1.0)), action, opts).sfl_G;
      std::string f = expect_equal(joined, left + right);
      return f.empty() ? expect_equal(left + right, base) : f;
    });
    concat.run(ctx + " extension", [&] {
      const OperatorPath q = sampler.path_from(p.block_at(1.0), p.tails());
      const auto sq = sfl_G(q, action, opts).sfl_G;
      return expect_equal(sfl_G(concatenate(p, q), action, opts).sfl_G, base + sq);
    });

    additive.run(ctx + " random summand", [&] {
      const Tails tq{sampler.uniform(0, 1) < 0.5, sampler.uniform(0, 1) < 0.5};
      const OperatorPath q = sampler.path(tq, sampler.uniform(0, 1) < 0.5);
      const auto sq = sfl_G(q, action, opts).sfl_G;
      const auto sum = sfl_G(direct_sum(p, q), direct_sum(action, action), opts).sfl_G;
      return expect_equal(sum, base + sq);
    });
    additive.run(ctx + " invertible summand", [&] {
      const OperatorPath q = OperatorPath::constant(sampler.invertible(0.5), p.tails());
      return expect_equal(sfl_G(direct_sum(p, q), direct_sum(action, action), opts).sfl_G, base);
    });

    homotopy.run(ctx + " reparametrization", [&] {
      const double beta = sampler.uniform(-0.9, 0.9);
      const OperatorPath q = reparametrized(p, beta, 24);
      for (double s : {0.25, 0.5, 0.75, 1.0}) {
        std::string f = expect_equal(sfl_G(straight_line(p, q, s), action, opts).sfl_G, base);
        if (!f.empty()) return "s = " + std::to_string(s) + ": " + f;
      }
      return std::string();
    });

    orthogonal.run(ctx + " conjugation", [&] {
      const Matrix u = sampler.orthogonal();
      return expect_equal(sfl_G(congruence(p, u), action, opts).sfl_G, base);
    });
  }

  AxiomReport report;
  for (const auto* rec : {&zero, &concat, &additive, &homotopy, &orthogonal}) report.results.push_back(rec->result());
  return report;
}

}  // namespace sflow
