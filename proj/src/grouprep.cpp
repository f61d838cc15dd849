#include "sflow/grouprep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>

#include "sflow/error.hpp"

namespace sflow {

namespace {

constexpr double kTableTol = 1e-9;
constexpr double kOrthoTol = 1e-10;
constexpr double kHomTol = 1e-9;

Matrix rotation(double theta) {
  return Matrix{{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}};
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> seen(g.order, false);
  for (std::size_t x = 0; x < g.order; ++x) {
    if (seen[x]) continue;
    std::set<std::size_t> cls;
    for (std::size_t h = 0; h < g.order; ++h) cls.insert(g.mult_table[g.mult_table[h][x]][g.inverse[h]]);
    for (std::size_t y : cls) seen[y] = true;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

double class_pairing(const FiniteGroup& g, const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t c = 0; c < g.classes.size(); ++c) s += static_cast<double>(g.class_size(c)) * a[c] * b[c];
  return s / static_cast<double>(g.order);
}

// Character of a preset irrep from its matrix model, one value per class.
std::vector<double> model_character(const FiniteGroup& g, const std::vector<Matrix>& model) {
  std::vector<double> chi(g.classes.size());
  for (std::size_t c = 0; c < g.classes.size(); ++c) {
    const Matrix& m = model[g.classes[c].front()];
    double tr = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
    chi[c] = tr;
  }
  return chi;
}

struct PresetIrrep {
  std::string name;
  int schur_norm;
};

std::vector<PresetIrrep> preset_irreps(GroupPreset preset, std::size_t n) {
  std::vector<PresetIrrep> out{{"trivial", 1}};
  switch (preset) {
    case GroupPreset::Trivial:
      break;
    case GroupPreset::Cyclic:
      if (n % 2 == 0) out.push_back({"sign", 1});
      for (std::size_t j = 1; 2 * j < n; ++j) out.push_back({"rot" + std::to_string(j), 2});
      break;
    case GroupPreset::Dihedral:
      out.push_back({"det", 1});
      if (n % 2 == 0) {
        out.push_back({"r_sign", 1});
        out.push_back({"rs_sign", 1});
      }
      for (std::size_t j = 1; 2 * j < n; ++j) out.push_back({"std" + std::to_string(j), 1});
      break;
    case GroupPreset::Explicit:
      break;
  }
  return out;
}

GroupHandle make_preset(GroupPreset preset, std::size_t n, std::vector<std::vector<std::size_t>> table) {
  FiniteGroup g = make_group(std::move(table));
  RealCharacterTable chars;
  for (const auto& p : preset_irreps(preset, n)) chars.irreps.push_back({p.name, 1, p.schur_norm, {}});
  auto data = std::make_shared<GroupData>(std::move(g), std::move(chars), preset, n);
  // Fill character values from the matrix models, then validate.
  RealCharacterTable filled = data->table();
  for (std::size_t nu = 0; nu < filled.size(); ++nu) {
    const auto model = data->irrep_model(nu);
    filled.irreps[nu].degree = static_cast<int>(model.front().rows());
    filled.irreps[nu].values = model_character(data->group(), model);
  }
  validate_character_table(data->group(), filled);
  return std::make_shared<GroupData>(data->group(), std::move(filled), preset, n);
}

}  // namespace

FiniteGroup make_group(std::vector<std::vector<std::size_t>> mult_table) {
  FiniteGroup g;
  g.order = mult_table.size();
  if (g.order == 0) throw Error(ErrorKind::NonGroup, "empty multiplication table");
  for (const auto& row : mult_table) {
    if (row.size() != g.order) throw Error(ErrorKind::NonGroup, "multiplication table is not square");
    for (std::size_t x : row)
      if (x >= g.order) throw Error(ErrorKind::NonGroup, "table entry " + std::to_string(x) + " out of range");
  }
  g.mult_table = std::move(mult_table);
  const auto& m = g.mult_table;

  bool found = false;
  for (std::size_t e = 0; e < g.order && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < g.order && ok; ++x) ok = m[e][x] == x && m[x][e] == x;
    if (ok) {
      g.identity = e;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::NonGroup, "no identity element");

  for (std::size_t a = 0; a < g.order; ++a)
    for (std::size_t b = 0; b < g.order; ++b)
      for (std::size_t c = 0; c < g.order; ++c)
        if (m[m[a][b]][c] != m[a][m[b][c]]) {
          throw Error(ErrorKind::NonGroup, "associativity fails at (" + std::to_string(a) + ", " +
                                               std::to_string(b) + ", " + std::to_string(c) + ")");
        }

  g.inverse.assign(g.order, g.order);
  for (std::size_t a = 0; a < g.order; ++a) {
    for (std::size_t b = 0; b < g.order; ++b)
      if (m[a][b] == g.identity && m[b][a] == g.identity) g.inverse[a] = b;
    if (g.inverse[a] == g.order) throw Error(ErrorKind::NonGroup, "element " + std::to_string(a) + " has no inverse");
  }

  g.classes = conjugacy_classes(g);
  g.class_of.assign(g.order, 0);
  for (std::size_t c = 0; c < g.classes.size(); ++c)
    for (std::size_t x : g.classes[c]) g.class_of[x] = c;
  return g;
}

std::size_t RealCharacterTable::find(const std::string& name) const {
  for (std::size_t nu = 0; nu < irreps.size(); ++nu)
    if (irreps[nu].name == name) return nu;
  return irreps.size();
}

void validate_character_table(const FiniteGroup& group, const RealCharacterTable& table) {
  if (table.irreps.empty()) throw Error(ErrorKind::BadCharacterTable, "table has no irreps");
  for (const auto& irrep : table.irreps) {
    if (irrep.values.size() != group.classes.size()) {
      throw Error(ErrorKind::BadCharacterTable, "irrep " + irrep.name + " has " + std::to_string(irrep.values.size()) +
                                                    " values for " + std::to_string(group.classes.size()) + " classes");
    }
    if (irrep.degree < 1) throw Error(ErrorKind::BadCharacterTable, "irrep " + irrep.name + " has degree < 1");
    if (irrep.schur_norm != 1 && irrep.schur_norm != 2 && irrep.schur_norm != 4)
      throw Error(ErrorKind::BadCharacterTable, "irrep " + irrep.name + " has schur norm not in {1,2,4}");
    if (std::abs(irrep.values[group.class_of[group.identity]] - irrep.degree) > kTableTol)
      throw Error(ErrorKind::BadCharacterTable, "irrep " + irrep.name + ": value at identity differs from degree");
  }
  for (std::size_t a = 0; a < table.size(); ++a) {
    for (std::size_t b = a; b < table.size(); ++b) {
      const double p = class_pairing(group, table.irreps[a].values, table.irreps[b].values);
      const double want = a == b ? table.irreps[a].schur_norm : 0.0;
      if (std::abs(p - want) > kTableTol) {
        std::ostringstream os;
        os << "<" << table.irreps[a].name << ", " << table.irreps[b].name << "> = " << p << ", expected " << want;
        throw Error(ErrorKind::BadCharacterTable, os.str());
      }
    }
  }
}

GroupData::GroupData(FiniteGroup group, RealCharacterTable table, GroupPreset preset, std::size_t preset_n)
    : group_(std::move(group)), table_(std::move(table)), preset_(preset), preset_n_(preset_n) {}

std::vector<Matrix> GroupData::irrep_model(std::size_t nu) const {
  if (!has_irrep_models()) throw Error(ErrorKind::WrongGroup, "explicit groups carry no irrep matrix models");
  const std::string& name = table_.irreps.at(nu).name;
  const std::size_t n = preset_n_;
  std::vector<Matrix> out;
  out.reserve(group_.order);
  if (name == "trivial") {
    out.assign(group_.order, Matrix{{1.0}});
    return out;
  }
  const double two_pi = 2.0 * std::numbers::pi;
  if (preset_ == GroupPreset::Cyclic) {
    if (name == "sign") {
      for (std::size_t k = 0; k < n; ++k) out.push_back(Matrix{{k % 2 == 0 ? 1.0 : -1.0}});
    } else {
      const std::size_t j = std::stoul(name.substr(3));
      for (std::size_t k = 0; k < n; ++k) out.push_back(rotation(two_pi * double(j * k % n) / double(n)));
    }
    return out;
  }
  // Dihedral: r^k then s r^k, with rho(s) = diag(1, -1) in the 2-dim models.
  auto one_dim = [&](double r_sign, double s_sign) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(Matrix{{k % 2 == 0 ? 1.0 : r_sign}});
    for (std::size_t k = 0; k < n; ++k) out.push_back(Matrix{{s_sign * (k % 2 == 0 ? 1.0 : r_sign)}});
  };
  if (name == "det") {
    one_dim(1.0, -1.0);
  } else if (name == "r_sign") {
    one_dim(-1.0, 1.0);
  } else if (name == "rs_sign") {
    one_dim(-1.0, -1.0);
  } else {
    const std::size_t j = std::stoul(name.substr(3));
    const Matrix s{{1.0, 0.0}, {0.0, -1.0}};
    for (std::size_t k = 0; k < n; ++k) out.push_back(rotation(two_pi * double(j * k % n) / double(n)));
    for (std::size_t k = 0; k < n; ++k) out.push_back(s * rotation(two_pi * double(j * k % n) / double(n)));
  }
  return out;
}

std::string GroupData::describe() const {
  switch (preset_) {
    case GroupPreset::Trivial:
      return "trivial";
    case GroupPreset::Cyclic:
      return "cyclic(" + std::to_string(preset_n_) + ")";
    case GroupPreset::Dihedral:
      return "dihedral(" + std::to_string(preset_n_) + ")";
    case GroupPreset::Explicit:
      break;
  }
  return "explicit(order " + std::to_string(group_.order) + ")";
}

GroupHandle trivial_group() {
  static const GroupHandle g = make_preset(GroupPreset::Trivial, 1, {{0}});
  return g;
}

namespace {

// Presets are shared so that virtual representations built from separately
// parsed jobs compare equal.
GroupHandle cached_preset(GroupPreset preset, std::size_t n, GroupHandle (*build)(std::size_t)) {
  static std::mutex mutex;
  static std::map<std::pair<GroupPreset, std::size_t>, GroupHandle> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{preset, n}];
  if (!slot) slot = build(n);
  return slot;
}

GroupHandle build_cyclic(std::size_t n) {
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return make_preset(GroupPreset::Cyclic, n, std::move(table));
}

GroupHandle build_dihedral(std::size_t n);

}  // namespace

GroupHandle cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::NonGroup, "cyclic(n) needs n >= 1");
  return cached_preset(GroupPreset::Cyclic, n, &build_cyclic);
}

GroupHandle dihedral_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::NonGroup, "dihedral(n) needs n >= 1");
  return cached_preset(GroupPreset::Dihedral, n, &build_dihedral);
}

namespace {

GroupHandle build_dihedral(std::size_t n) {
  std::vector<std::vector<std::size_t>> table(2 * n, std::vector<std::size_t>(2 * n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t sum = (a + b) % n;
      const std::size_t diff = (b + n - a) % n;
      table[a][b] = sum;              // r^a r^b
      table[a][n + b] = n + diff;     // r^a s r^b = s r^(b-a)
      table[n + a][b] = n + sum;      // s r^a r^b
      table[n + a][n + b] = diff;     // s r^a s r^b = r^(b-a)
    }
  }
  return make_preset(GroupPreset::Dihedral, n, std::move(table));
}

}  // namespace

GroupHandle explicit_group(std::vector<std::vector<std::size_t>> mult_table,
                           std::vector<std::vector<std::size_t>> classes, std::vector<Irrep> irreps) {
  FiniteGroup g = make_group(std::move(mult_table));
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::vector<std::vector<std::size_t>> given = classes;
  std::vector<std::vector<std::size_t>> computed = g.classes;
  std::sort(given.begin(), given.end());
  std::sort(computed.begin(), computed.end());
  if (given != computed) throw Error(ErrorKind::BadCharacterTable, "classes are not the conjugacy classes of the group");
  // Adopt the caller's class order so that character values line up.
  g.classes = std::move(classes);
  for (std::size_t c = 0; c < g.classes.size(); ++c)
    for (std::size_t x : g.classes[c]) g.class_of[x] = c;
  RealCharacterTable table{std::move(irreps)};
  validate_character_table(g, table);
  return std::make_shared<GroupData>(std::move(g), std::move(table), GroupPreset::Explicit, 0);
}

// ---------------------------------------------------------------------------

OrthogonalAction::OrthogonalAction(GroupHandle group, std::vector<Matrix> matrices)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  const FiniteGroup& g = group_->group();
  if (matrices_.size() != g.order)
    throw Error(ErrorKind::DimMismatch, "action needs one matrix per group element");
  dim_ = matrices_.front().rows();
  for (std::size_t x = 0; x < g.order; ++x) {
    const Matrix& m = matrices_[x];
    if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorKind::DimMismatch, "action matrices differ in size");
    if (dim_ > 0 && max_abs(m.transpose() * m - Matrix::identity(dim_)) > kOrthoTol)
      throw Error(ErrorKind::NotEquivariant, "action matrix of element " + std::to_string(x) + " is not orthogonal");
  }
  for (std::size_t a = 0; a < g.order; ++a)
    for (std::size_t b = 0; b < g.order; ++b)
      if (dim_ > 0 && max_abs(matrices_[g.multiply(a, b)] - matrices_[a] * matrices_[b]) > kHomTol) {
        throw Error(ErrorKind::NotEquivariant, "action is not a homomorphism at (" + std::to_string(a) + ", " +
                                                   std::to_string(b) + ")");
      }
  generators_.resize(g.order);
  for (std::size_t x = 0; x < g.order; ++x) generators_[x] = x;
}

OrthogonalAction OrthogonalAction::from_generators(GroupHandle group,
                                                   const std::vector<std::pair<std::size_t, Matrix>>& generators,
                                                   std::size_t dim) {
  const FiniteGroup& g = group->group();
  std::vector<Matrix> mats(g.order);
  std::vector<bool> known(g.order, false);
  mats[g.identity] = Matrix::identity(dim);
  known[g.identity] = true;
  std::vector<std::size_t> gens;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& [elem, m] = generators[k];
    const std::string where = "action.generators[" + std::to_string(k) + "]";
    if (elem >= g.order) throw Error(ErrorKind::SchemaError, where + " names element " + std::to_string(elem) + " outside the group");
    if (m.rows() != dim || m.cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, where + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                                    ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
    if (max_abs(m.transpose() * m - Matrix::identity(dim)) > kOrthoTol)
      throw Error(ErrorKind::SchemaError, where + " not orthogonal");
    if (known[elem] && max_abs(mats[elem] - m) > kHomTol)
      throw Error(ErrorKind::SchemaError, where + " conflicts with another generator");
    mats[elem] = m;
    known[elem] = true;
    gens.push_back(elem);
  }
  // Closure: multiply known elements by generators until nothing new appears.
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t x = 0; x < g.order; ++x) {
      if (!known[x]) continue;
      for (std::size_t s : gens) {
        const std::size_t y = g.multiply(x, s);
        Matrix candidate = mats[x] * mats[s];
        if (!known[y]) {
          mats[y] = std::move(candidate);
          known[y] = true;
          grew = true;
        } else if (max_abs(mats[y] - candidate) > kHomTol) {
          throw Error(ErrorKind::SchemaError, "action matrices do not define a homomorphism (element " +
                                                  std::to_string(y) + ")");
        }
      }
    }
  }
  for (std::size_t x = 0; x < g.order; ++x)
    if (!known[x]) throw Error(ErrorKind::SchemaError, "action generators do not generate the group");
  OrthogonalAction action(std::move(group), std::move(mats));
  if (!gens.empty()) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    action.generators_ = std::move(gens);
  }
  return action;
}

OrthogonalAction OrthogonalAction::trivial(GroupHandle group, std::size_t dim) {
  const std::size_t order = group->order();
  return OrthogonalAction(std::move(group), std::vector<Matrix>(order, Matrix::identity(dim)));
}

OrthogonalAction OrthogonalAction::from_multiplicities(GroupHandle group, const std::vector<int>& copies) {
  const std::size_t order = group->order();
  std::vector<Matrix> mats(order, Matrix(0, 0));
  for (std::size_t nu = 0; nu < copies.size() && nu < group->table().size(); ++nu) {
    if (copies[nu] <= 0) continue;
    const auto model = group->irrep_model(nu);
    for (int c = 0; c < copies[nu]; ++c)
      for (std::size_t x = 0; x < order; ++x) mats[x] = block_diagonal(mats[x], model[x]);
  }
  return OrthogonalAction(std::move(group), std::move(mats));
}

OrthogonalAction OrthogonalAction::conjugated(const Matrix& u) const {
  std::vector<Matrix> mats;
  mats.reserve(matrices_.size());
  const Matrix ut = u.transpose();
  for (const auto& m : matrices_) mats.push_back(u * m * ut);
  OrthogonalAction out(group_, std::move(mats));
  out.generators_ = generators_;
  return out;
}

OrthogonalAction OrthogonalAction::extended(std::size_t extra) const {
  if (extra == 0) return *this;
  std::vector<Matrix> mats;
  mats.reserve(matrices_.size());
  for (const auto& m : matrices_) mats.push_back(block_diagonal(m, Matrix::identity(extra)));
  OrthogonalAction out(group_, std::move(mats));
  out.generators_ = generators_;
  return out;
}

OrthogonalAction direct_sum(const OrthogonalAction& a, const OrthogonalAction& b) {
  if (a.group_handle() != b.group_handle()) throw Error(ErrorKind::TableMismatch, "direct sum of actions of different groups");
  std::vector<Matrix> mats;
  mats.reserve(a.matrices().size());
  for (std::size_t x = 0; x < a.matrices().size(); ++x) mats.push_back(block_diagonal(a.matrix(x), b.matrix(x)));
  return OrthogonalAction(a.group_handle(), std::move(mats));
}

// ---------------------------------------------------------------------------

VirtualRep::VirtualRep(GroupHandle group, std::vector<std::int64_t> coeffs)
    : group_(std::move(group)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != group_->table().size())
    throw Error(ErrorKind::TableMismatch, "coefficient count does not match the character table");
}

VirtualRep VirtualRep::zero(GroupHandle group) {
  const std::size_t n = group->table().size();
  return VirtualRep(std::move(group), std::vector<std::int64_t>(n, 0));
}

bool VirtualRep::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

std::string VirtualRep::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t nu = 0; nu < coeffs_.size(); ++nu) {
    if (nu) os << ", ";
    os << (group_ ? group_->table().irreps[nu].name : std::to_string(nu)) << ":" << coeffs_[nu];
  }
  os << ")";
  return os.str();
}

bool operator==(const VirtualRep& a, const VirtualRep& b) {
  return a.group_ == b.group_ && a.coeffs_ == b.coeffs_;
}

VirtualRep operator+(const VirtualRep& a, const VirtualRep& b) {
  if (a.group() != b.group()) throw Error(ErrorKind::TableMismatch, "adding virtual representations of different tables");
  std::vector<std::int64_t> c(a.coeffs());
  for (std::size_t nu = 0; nu < c.size(); ++nu) c[nu] += b[nu];
  return VirtualRep(a.group(), std::move(c));
}

VirtualRep operator-(const VirtualRep& a) {
  std::vector<std::int64_t> c(a.coeffs());
  for (auto& x : c) x = -x;
  return VirtualRep(a.group(), std::move(c));
}

VirtualRep operator-(const VirtualRep& a, const VirtualRep& b) { return a + (-b); }

// ---------------------------------------------------------------------------

std::vector<double> character_of_subspace(const OrthogonalAction& action, const Matrix& frame, double tol_inv) {
  const FiniteGroup& g = action.group().group();
  std::vector<double> chi(g.classes.size(), 0.0);
  if (frame.cols() == 0) return chi;
  if (frame.rows() != action.dim())
    throw Error(ErrorKind::DimMismatch, "frame has " + std::to_string(frame.rows()) + " rows, action dimension is " +
                                            std::to_string(action.dim()));
  const Matrix p = projector(frame);
  for (std::size_t x : action.generators()) {
    const double norm = spectral_norm(action.matrix(x) * p - p * action.matrix(x));
    if (norm > tol_inv) {
      std::ostringstream os;
      os << "subspace is not invariant under element " << x << ": commutator norm " << norm;
      throw Error(ErrorKind::NotInvariant, os.str());
    }
  }
  const Matrix ft = frame.transpose();
  for (std::size_t c = 0; c < g.classes.size(); ++c) {
    const Matrix m = ft * action.matrix(g.classes[c].front()) * frame;
    double tr = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
    chi[c] = tr;
  }
  return chi;
}

VirtualRep multiplicity_vector(const std::vector<double>& chi, const GroupHandle& group) {
  const FiniteGroup& g = group->group();
  const auto& table = group->table();
  if (chi.size() != g.classes.size())
    throw Error(ErrorKind::DimMismatch, "class function has " + std::to_string(chi.size()) + " values for " +
                                            std::to_string(g.classes.size()) + " classes");
  std::vector<std::int64_t> coeffs(table.size());
  for (std::size_t nu = 0; nu < table.size(); ++nu) {
    const double m = class_pairing(g, chi, table.irreps[nu].values) / table.irreps[nu].schur_norm;
    const double r = std::round(m);
    if (std::abs(m - r) >= 1e-6) {
      std::ostringstream os;
      os << "multiplicity of " << table.irreps[nu].name << " is " << m;
      throw Error(ErrorKind::NonIntegralMultiplicity, os.str());
    }
    coeffs[nu] = static_cast<std::int64_t>(r);
  }
  return VirtualRep(group, std::move(coeffs));
}

std::int64_t forgetful(const VirtualRep& a) {
  std::int64_t d = 0;
  const auto& irreps = a.group()->table().irreps;
  for (std::size_t nu = 0; nu < irreps.size(); ++nu) d += a[nu] * irreps[nu].degree;
  return d;
}

bool is_z2(const GroupData& group) {
  const auto& t = group.table();
  return group.order() == 2 && t.size() == 2 && t.irreps[0].degree == 1 && t.irreps[1].degree == 1;
}

std::pair<std::int64_t, std::int64_t> phi_z2(const VirtualRep& a) {
  const GroupData& g = *a.group();
  if (!is_z2(g)) throw Error(ErrorKind::WrongGroup, "phi is defined on RO(Z2) only, got " + g.describe());
  // The trivial irrep is the one with value +1 on the non-identity class.
  const auto& t = g.table();
  const std::size_t other = g.group().class_of[g.group().identity] == 0 ? 1 : 0;
  const std::size_t triv = t.irreps[0].values[other] > 0 ? 0 : 1;
  return {a[0] + a[1], a[triv]};
}

Matrix isotypical_projection(const OrthogonalAction& action, std::size_t nu) {
  const GroupData& gd = action.group();
  const FiniteGroup& g = gd.group();
  const Irrep& irrep = gd.table().irreps.at(nu);
  const std::size_t d = action.dim();
  Matrix avg(d, d);
  for (std::size_t x = 0; x < g.order; ++x) {
    const double w = irrep.values[g.class_of[x]];
    if (w != 0.0) avg += w * action.matrix(x);
  }
  const double scale = double(irrep.degree) / (double(g.order) * irrep.schur_norm);
  Matrix p = (scale * avg).symmetrized();
  auto idempotency = [](const Matrix& q) { return spectral_norm(q * q - q); };
  if (d == 0 || idempotency(p) <= 1e-8) return p;
  // Fall back to the spectral projection onto the eigenvalue-1 eigenspace.
  const auto eig = eigh(p);
  Matrix q = spectral_function(eig, [](double v) { return std::abs(v - 1.0) < 0.5 ? 1.0 : 0.0; });
  const double res = idempotency(q);
  if (res > 1e-8) {
    std::ostringstream os;
    os << "projection for " << irrep.name << " fails idempotency: " << res;
    throw Error(ErrorKind::ProjectionResidual, os.str());
  }
  return q;
}

double commutator_norm(const OrthogonalAction& action, const Matrix& a) {
  if (a.rows() != action.dim() || a.cols() != action.dim())
    throw Error(ErrorKind::DimMismatch, "operator is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                            ", action dimension is " + std::to_string(action.dim()));
  double m = 0.0;
  for (std::size_t x : action.generators())
    m = std::max(m, spectral_norm(action.matrix(x) * a - a * action.matrix(x)));
  return m;
}

}  // namespace sflow
