#pragma once

// Finite groups, their real character tables, orthogonal actions on R^d and
// virtual representations (integer multiplicity vectors over the real
// irreducibles, i.e. elements of RO(G)).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sflow/linalg.hpp"

namespace sflow {

struct FiniteGroup {
  std::size_t order = 0;
  std::vector<std::vector<std::size_t>> mult_table;  // mult_table[g][h] = g*h
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;
  std::vector<std::vector<std::size_t>> classes;  // each sorted, ordered by smallest element
  std::vector<std::size_t> class_of;

  std::size_t class_size(std::size_t c) const { return classes[c].size(); }
  std::size_t multiply(std::size_t g, std::size_t h) const { return mult_table[g][h]; }
};

// Validates the group axioms by exhaustive loop and computes inverses and
// conjugacy classes. Throws NonGroup.
FiniteGroup make_group(std::vector<std::vector<std::size_t>> mult_table);

struct Irrep {
  std::string name;
  int degree = 1;
  int schur_norm = 1;          // 1 real, 2 complex, 4 quaternionic type
  std::vector<double> values;  // one per conjugacy class
};

struct RealCharacterTable {
  std::vector<Irrep> irreps;

  std::size_t size() const noexcept { return irreps.size(); }
  // Index of the irrep called `name`, or size() when absent.
  std::size_t find(const std::string& name) const;
};

enum class GroupPreset { Trivial, Cyclic, Dihedral, Explicit };

// A group together with its real character table. Presets additionally know
// an explicit orthogonal matrix realization of every irrep.
class GroupData {
 public:
  GroupData(FiniteGroup group, RealCharacterTable table, GroupPreset preset = GroupPreset::Explicit,
            std::size_t preset_n = 0);

  const FiniteGroup& group() const noexcept { return group_; }
  const RealCharacterTable& table() const noexcept { return table_; }
  GroupPreset preset() const noexcept { return preset_; }
  std::size_t preset_n() const noexcept { return preset_n_; }
  std::size_t order() const noexcept { return group_.order; }

  // Orthogonal matrices of irrep `nu` for every element; only for presets.
  bool has_irrep_models() const noexcept { return preset_ != GroupPreset::Explicit; }
  std::vector<Matrix> irrep_model(std::size_t nu) const;

  std::string describe() const;

 private:
  FiniteGroup group_;
  RealCharacterTable table_;
  GroupPreset preset_;
  std::size_t preset_n_;
};

using GroupHandle = std::shared_ptr<const GroupData>;

GroupHandle trivial_group();
// Elements g^k, k = 0..n-1.
GroupHandle cyclic_group(std::size_t n);
// Order 2n; elements r^k at index k and s r^k at index n + k.
GroupHandle dihedral_group(std::size_t n);
// User-supplied table; classes must be the conjugacy classes of the group
// (in any order) and the table must pass the orthogonality checks.
GroupHandle explicit_group(std::vector<std::vector<std::size_t>> mult_table,
                           std::vector<std::vector<std::size_t>> classes, std::vector<Irrep> irreps);

// Orthogonality and self-pairing checks of a table, tolerance 1e-9. Throws
// BadCharacterTable.
void validate_character_table(const FiniteGroup& group, const RealCharacterTable& table);

class OrthogonalAction {
 public:
  // One matrix per group element; validated for orthogonality (1e-10) and the
  // homomorphism property (1e-9).
  OrthogonalAction(GroupHandle group, std::vector<Matrix> matrices);

  // Generates all element matrices from a subset by closure under products.
  // Throws SchemaError if a given matrix is not orthogonal (reported by its
  // position in `generators`) or the closure is inconsistent.
  static OrthogonalAction from_generators(GroupHandle group,
                                          const std::vector<std::pair<std::size_t, Matrix>>& generators,
                                          std::size_t dim);
  static OrthogonalAction trivial(GroupHandle group, std::size_t dim);
  // Direct sum of copies of the preset irreps, copies[nu] times each.
  static OrthogonalAction from_multiplicities(GroupHandle group, const std::vector<int>& copies);

  const GroupHandle& group_handle() const noexcept { return group_; }
  const GroupData& group() const noexcept { return *group_; }
  std::size_t dim() const noexcept { return dim_; }
  const Matrix& matrix(std::size_t g) const { return matrices_[g]; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }

  // rho'(g) = U rho(g) U^T for orthogonal U.
  OrthogonalAction conjugated(const Matrix& u) const;
  // Identity on `extra` appended coordinates.
  OrthogonalAction extended(std::size_t extra) const;

 private:
  GroupHandle group_;
  std::size_t dim_ = 0;
  std::vector<Matrix> matrices_;
  std::vector<std::size_t> generators_;
};

OrthogonalAction direct_sum(const OrthogonalAction& a, const OrthogonalAction& b);

// Element of RO(G): exact integer multiplicities per irrep of one table.
class VirtualRep {
 public:
  VirtualRep() = default;
  VirtualRep(GroupHandle group, std::vector<std::int64_t> coeffs);
  static VirtualRep zero(GroupHandle group);

  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  const GroupHandle& group() const noexcept { return group_; }
  std::int64_t operator[](std::size_t nu) const { return coeffs_[nu]; }
  bool is_zero() const noexcept;

  std::string to_string() const;

  friend bool operator==(const VirtualRep& a, const VirtualRep& b);

 private:
  GroupHandle group_;
  std::vector<std::int64_t> coeffs_;
};

VirtualRep operator+(const VirtualRep& a, const VirtualRep& b);
VirtualRep operator-(const VirtualRep& a);
VirtualRep operator-(const VirtualRep& a, const VirtualRep& b);

// chi_E(class representative) = trace(F^T rho(g) F). Throws NotInvariant when
// ||rho(g) P_E - P_E rho(g)|| > tol_inv for some generator.
std::vector<double> character_of_subspace(const OrthogonalAction& action, const Matrix& frame,
                                          double tol_inv = 1e-7);

// <chi, chi_nu> / schur_norm_nu, rounded; residual must stay below 1e-6.
VirtualRep multiplicity_vector(const std::vector<double>& chi, const GroupHandle& group);

// Dimension of a virtual representation: sum of coeff * degree.
std::int64_t forgetful(const VirtualRep& a);

// RO(Z2) -> Z + Z, (dimension difference, fixed-point dimension difference).
std::pair<std::int64_t, std::int64_t> phi_z2(const VirtualRep& a);
bool is_z2(const GroupData& group);

// Projection onto the isotypical component of irrep nu.
Matrix isotypical_projection(const OrthogonalAction& action, std::size_t nu);

// max over generators of ||rho(g) A - A rho(g)||_2.
double commutator_norm(const OrthogonalAction& action, const Matrix& a);

}  // namespace sflow
