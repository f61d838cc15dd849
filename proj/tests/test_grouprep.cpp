#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sflow/error.hpp"
#include "sflow/grouprep.hpp"
#include "support.hpp"

using namespace sflow;

namespace {

ErrorKind kind_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ConsistencyFailure;
}

}  // namespace

TEST_CASE("preset tables") {
  const auto z2 = cyclic_group(2);
  REQUIRE(z2->table().size() == 2);
  CHECK(z2->table().irreps[0].name == "trivial");
  CHECK(z2->table().irreps[1].name == "sign");
  CHECK(z2->table().irreps[1].degree == 1);
  CHECK(z2->table().irreps[1].schur_norm == 1);

  // (1/3)(4 + 1 + 1) = 2 = schur norm of the rotation irrep.
  const auto z3 = cyclic_group(3);
  REQUIRE(z3->table().size() == 2);
  const auto& rot = z3->table().irreps[1];
  CHECK(rot.degree == 2);
  CHECK(rot.schur_norm == 2);
  REQUIRE(rot.values.size() == 3);
  CHECK(rot.values[0] == doctest::Approx(2.0));
  CHECK(rot.values[1] == doctest::Approx(-1.0));
  CHECK(rot.values[2] == doctest::Approx(-1.0));

  CHECK(trivial_group()->table().size() == 1);
  CHECK(dihedral_group(3)->table().size() == 3);
  CHECK(dihedral_group(4)->table().size() == 5);
  CHECK(cyclic_group(4)->table().size() == 3);
}

TEST_CASE("irrep models realize their characters") {
  for (const auto& g : {cyclic_group(5), cyclic_group(6), dihedral_group(3), dihedral_group(4), dihedral_group(5)}) {
    for (std::size_t nu = 0; nu < g->table().size(); ++nu) {
      const auto model = g->irrep_model(nu);
      for (std::size_t e = 0; e < g->order(); ++e) {
        double tr = 0.0;
        for (std::size_t i = 0; i < model[e].rows(); ++i) tr += model[e](i, i);
        CHECK(tr == doctest::Approx(g->table().irreps[nu].values[g->group().class_of[e]]));
      }
    }
  }
}

TEST_CASE("group validation") {
  CHECK(kind_of([] { make_group({{0, 1}, {1, 1}}); }) == ErrorKind::NonGroup);
  CHECK(kind_of([] { make_group({{0, 1}, {0, 1}}); }) == ErrorKind::NonGroup);
  const std::vector<std::vector<std::size_t>> z2{{0, 1}, {1, 0}};
  CHECK(kind_of([&] {
          explicit_group(z2, {{0}, {1}}, {Irrep{"a", 1, 1, {1, 1}}, Irrep{"b", 1, 1, {1, 1}}});
        }) == ErrorKind::BadCharacterTable);
  const auto g = explicit_group(z2, {{1}, {0}}, {Irrep{"a", 1, 1, {1, 1}}, Irrep{"b", 1, 1, {-1, 1}}});
  CHECK(g->order() == 2);
}

TEST_CASE("character_of_subspace") {
  const auto flip = testing::z2_flip();
  CHECK(character_of_subspace(flip, Matrix{{1}, {0}}) == std::vector<double>{1, 1});
  const auto swap = testing::z2_swap();
  const auto chi = character_of_subspace(swap, Matrix::identity(2));
  CHECK(chi[0] == doctest::Approx(2.0));
  CHECK(chi[1] == doctest::Approx(0.0));
  CHECK(character_of_subspace(swap, Matrix(2, 0)) == std::vector<double>{0, 0});
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(kind_of([&] { character_of_subspace(swap, Matrix{{1}, {0}}); }) == ErrorKind::NotInvariant);
  CHECK(character_of_subspace(swap, Matrix{{s}, {-s}})[1] == doctest::Approx(-1.0));
}

TEST_CASE("multiplicity_vector") {
  const auto z2 = cyclic_group(2);
  const auto z3 = cyclic_group(3);
  CHECK(multiplicity_vector({2, 0}, z2).coeffs() == testing::coeffs({1, 1}));
  CHECK(multiplicity_vector({2, -1, -1}, z3).coeffs() == testing::coeffs({0, 1}));
  CHECK(multiplicity_vector({0, 0}, z2).is_zero());
  CHECK(kind_of([&] { multiplicity_vector({1, 0}, z2); }) == ErrorKind::NonIntegralMultiplicity);
}

TEST_CASE("virtual representation arithmetic") {
  const auto z2 = cyclic_group(2);
  const VirtualRep a(z2, {1, 0}), b(z2, {0, 1});
  CHECK((a + b).coeffs() == testing::coeffs({1, 1}));
  CHECK((-VirtualRep(z2, {1, -1})).coeffs() == testing::coeffs({-1, 1}));
  CHECK((a + -a).is_zero());
  CHECK(kind_of([&] { return a + VirtualRep(cyclic_group(3), {1, 0}); }) == ErrorKind::TableMismatch);
}

TEST_CASE("forgetful and phi") {
  const auto z2 = cyclic_group(2);
  CHECK(forgetful(VirtualRep(z2, {1, -1})) == 0);
  CHECK(forgetful(VirtualRep(cyclic_group(3), {0, 1})) == 2);
  CHECK(forgetful(VirtualRep::zero(z2)) == 0);
  CHECK(phi_z2(VirtualRep(z2, {1, -1})) == std::pair<std::int64_t, std::int64_t>{0, 1});
  CHECK(phi_z2(VirtualRep(z2, {0, 0})) == std::pair<std::int64_t, std::int64_t>{0, 0});
  CHECK(phi_z2(VirtualRep(z2, {2, 1})) == std::pair<std::int64_t, std::int64_t>{3, 2});
  CHECK(kind_of([] { phi_z2(VirtualRep(cyclic_group(3), {1, 0})); }) == ErrorKind::WrongGroup);
}

TEST_CASE("isotypical projections") {
  const auto flip = testing::z2_flip();
  CHECK(testing::near(isotypical_projection(flip, 0), Matrix::diagonal({1.0, 0.0})));
  CHECK(testing::near(isotypical_projection(flip, 1), Matrix::diagonal({0.0, 1.0})));
  CHECK(testing::near(isotypical_projection(OrthogonalAction::trivial(trivial_group(), 3), 0), Matrix::identity(3)));
  CHECK(testing::near(isotypical_projection(testing::z2_swap(), 0), Matrix{{0.5, 0.5}, {0.5, 0.5}}));
}

TEST_CASE("projections resolve the identity and match the character formula") {
  for (const auto& g : {cyclic_group(3), cyclic_group(4), dihedral_group(3), dihedral_group(4)}) {
    std::vector<int> copies(g->table().size(), 1);
    copies[0] = 2;
    const auto action = OrthogonalAction::from_multiplicities(g, copies);
    Matrix sum(action.dim(), action.dim());
    for (std::size_t nu = 0; nu < g->table().size(); ++nu) {
      const Matrix p = isotypical_projection(action, nu);
      sum += p;
      CHECK(max_abs(p * p - p) < 1e-8);
      CHECK(asymmetry(p) < 1e-10);
      CHECK(commutator_norm(action, p) < 1e-8);
      const auto ref = oracle::isotypical(action, nu);
      for (std::size_t i = 0; i < action.dim(); ++i)
        for (std::size_t j = 0; j < action.dim(); ++j) CHECK(std::abs(p(i, j) - ref[i][j]) < 1e-9);
      for (std::size_t mu = nu + 1; mu < g->table().size(); ++mu)
        CHECK(spectral_norm(p * isotypical_projection(action, mu)) < 1e-8);
      // dim of an isotypical component = copies * degree
      const auto chi = character_of_subspace(action, oracle::frame(oracle::column_basis(ref), action.dim()));
      const auto v = multiplicity_vector(chi, g);
      CHECK(v[nu] == copies[nu]);
      CHECK(forgetful(v) == std::int64_t(copies[nu]) * g->table().irreps[nu].degree);
    }
    CHECK(testing::near(sum, Matrix::identity(action.dim()), 1e-8));
  }
}

TEST_CASE("actions") {
  CHECK(kind_of([] {
          OrthogonalAction::from_generators(cyclic_group(2), {{1, Matrix::diagonal({2.0, 1.0})}}, 2);
        }) == ErrorKind::SchemaError);
  const auto flip = testing::z2_flip();
  CHECK(flip.extended(2).dim() == 4);
  CHECK(testing::near(flip.extended(1).matrix(1), Matrix::diagonal({1.0, -1.0, 1.0})));
  const auto sum = direct_sum(flip, testing::z2_swap());
  CHECK(sum.dim() == 4);
  CHECK(commutator_norm(flip, Matrix{{0, 1}, {1, 0}}) == doctest::Approx(2.0));
}
