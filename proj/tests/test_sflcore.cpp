#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sflow/error.hpp"
#include "sflow/random.hpp"
#include "sflow/sflcore.hpp"
#include "support.hpp"

using namespace sflow;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ConsistencyFailure;
}

OperatorPath z2_golden() {
  return OperatorPath::affine(Matrix::diagonal({-1.0, 1.0}), Matrix::diagonal({2.0, -2.0}));
}

}  // namespace

TEST_CASE("normalization: scalar crossing") {
  CHECK(sfl(testing::scalar(-1, 2)) == 1);
  const auto trivial = OrthogonalAction::trivial(trivial_group(), 1);
  const auto r = sfl_G(testing::scalar(-1, 2), trivial);
  CHECK(r.sfl == 1);
  CHECK(r.sfl_G.coeffs() == testing::coeffs({1}));
  CHECK(r.certified);
  CHECK(r.crossings.size() == 1);
}

TEST_CASE("Z2 golden path") {
  const auto r = sfl_G(z2_golden(), testing::z2_flip());
  CHECK(r.sfl == 0);
  CHECK(r.sfl_G.coeffs() == testing::coeffs({1, -1}));
  CHECK(morse_oracle_sfl_G(z2_golden(), testing::z2_flip()).coeffs() == testing::coeffs({1, -1}));
  CHECK(oracle::sfl_G(z2_golden(), testing::z2_flip()) == testing::coeffs({1, -1}));
}

TEST_CASE("constant invertible paths have zero flow") {
  const auto c = OperatorPath::constant(Matrix::diagonal({1.0, -2.0}), {true, false});
  CHECK(sfl_G(c, testing::z2_flip()).sfl_G.is_zero());
  CHECK(morse_oracle_sfl_G(c, testing::z2_flip()).is_zero());
  const auto p = find_partition(OperatorPath::constant(Matrix::identity(2)));
  CHECK(p.segments() == 1);
  CHECK(p.levels[0] > 0.0);
}

TEST_CASE("given partition with minus tail") {
  const auto path = testing::scalar(-1, 2, {false, true});
  CertifiedPartition p;
  p.knots = {0, 0.2, 0.7, 1};
  p.levels = {0.5, 0.8, 0.2};
  const auto r = sfl_G_with_partition(path, OrthogonalAction::trivial(trivial_group(), 1), p);
  CHECK(r.sfl == 1);
  for (double m : r.partition.margins) CHECK(m > 0.0);
  // searched partition agrees
  const auto found = find_partition(path);
  for (double level : found.levels) CHECK(level < 1.0);
  CHECK(sfl(path) == 1);
}

TEST_CASE("invalid partitions are rejected") {
  CertifiedPartition p;
  p.knots = {0, 1};
  p.levels = {0.5};
  CHECK_THROWS_AS(sfl_G_with_partition(testing::scalar(-1, 2), OrthogonalAction::trivial(trivial_group(), 1), p),
                  Error);
}

TEST_CASE("failure modes") {
  CHECK(kind_of([] { sfl(testing::scalar(0, 1)); }) == ErrorKind::EndpointNotInvertible);
  try {
    require_invertible_endpoints(testing::scalar(1, -1));
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("lambda = 1") != std::string::npos);
  }
  // eigenvalue identically zero on [0.25, 0.75]: no regular split point
  const auto flat = OperatorPath::piecewise_linear({0, 0.25, 0.75, 1}, {Matrix{{-1}}, Matrix{{0}}, Matrix{{0}}, Matrix{{1}}},
                                                   {true, false});
  PartitionOptions shallow;
  shallow.max_depth = 6;
  CHECK(kind_of([&] { sfl(flat, shallow); }) == ErrorKind::CertificationFailed);
  const auto steep = OperatorPath::piecewise_linear({0, 0.5, 1}, {Matrix{{-1e6}}, Matrix{{0}}, Matrix{{1e6}}}, {true, true});
  CHECK(kind_of([&] { sfl(steep, shallow); }) == ErrorKind::CertificationFailed);
  PartitionOptions none;
  none.max_depth = 0;
  CHECK(kind_of([&] { sfl(testing::scalar(-1, 2, {true, false}), none); }) ==
        ErrorKind::CertificationFailed);
}

TEST_CASE("Morse oracle is independent of the truncation") {
  EquivariantSampler s(OrthogonalAction::from_multiplicities(cyclic_group(3), {1, 1}), 21);
  for (Tails t : {Tails{}, Tails{true, false}, Tails{false, true}, Tails{true, true}}) {
    const auto p = s.path(t, false);
    CHECK(morse_oracle_sfl_G(p, s.action(), 0) == morse_oracle_sfl_G(p, s.action(), 2));
  }
  CHECK(morse_oracle_sfl_G(testing::scalar(-1, 2), OrthogonalAction::trivial(trivial_group(), 1)).coeffs() ==
        testing::coeffs({1}));
}

TEST_CASE("partition route matches independent oracles") {
  const std::vector<GroupHandle> groups{trivial_group(), cyclic_group(2), cyclic_group(3), dihedral_group(3)};
  std::uint64_t seed = 100;
  for (const auto& g : groups) {
    std::vector<int> copies(g->table().size(), 1);
    const auto action = OrthogonalAction::from_multiplicities(g, copies);
    EquivariantSampler s(action, seed++);
    for (int i = 0; i < 8; ++i) {
      const Tails t{i % 2 == 1, (i / 2) % 2 == 1};
      const auto p = s.path(t, i % 3 == 0);
      const auto r = sfl_G(p, action);
      CHECK(r.sfl_G.coeffs() == oracle::sfl_G(p, action));
      CHECK(r.sfl == oracle::sfl(p));
      CHECK(forgetful(r.sfl_G) == sfl(p));
      CHECK(sfl_G(reverse(p), action).sfl_G == -r.sfl_G);
      VirtualRep total = VirtualRep::zero(action.group_handle());
      for (const auto& c : r.segment_contributions) total = total + c;
      CHECK(total == r.sfl_G);
    }
  }
}

TEST_CASE("finer partitions give the same answer") {
  const auto action = OrthogonalAction::from_multiplicities(cyclic_group(4), {1, 1, 1});
  EquivariantSampler s(action, 77);
  for (int i = 0; i < 6; ++i) {
    const auto p = s.path({i % 2 == 0, false}, true);
    const auto coarse = sfl_G(p, action);
    PartitionOptions fine;
    fine.min_depth = 4;
    fine.max_depth = 44;
    const auto refined = sfl_G(p, action, fine);
    CHECK(refined.partition.segments() >= 16);
    CHECK(refined.sfl_G == coarse.sfl_G);
  }
}

TEST_CASE("arctan scale gives the same flow") {
  PartitionOptions arctan;
  arctan.scale = SpectralScale::Arctan;
  const auto r = sfl_G(z2_golden(), testing::z2_flip(), arctan);
  CHECK(r.partition.scale == SpectralScale::Arctan);
  CHECK(r.sfl_G.coeffs() == testing::coeffs({1, -1}));
}

TEST_CASE("axiom suite on Z2 paths") {
  const auto action = OrthogonalAction::from_multiplicities(cyclic_group(2), {2, 2});
  EquivariantSampler s(action, 0);
  std::vector<OperatorPath> paths;
  for (int i = 0; i < 20; ++i) paths.push_back(s.path({}, false));
  const auto report = verify_axioms(paths, action, 0);
  for (const auto& a : report.results) {
    INFO(a.name << ": " << a.witness);
    CHECK(a.passed);
    CHECK(a.instances >= 20);
  }
  CHECK(report.all_passed());
}

TEST_CASE("loops and sums with constants") {
  const auto action = testing::z2_flip();
  const auto p = z2_golden();
  CHECK(sfl_G(concatenate(p, reverse(p)), action).sfl_G.is_zero());
  const auto q = OperatorPath::constant(Matrix::diagonal({2.0, -1.0}));
  const auto sum = direct_sum(p, q);
  CHECK(sfl_G(sum, direct_sum(action, action)).sfl_G == sfl_G(p, action).sfl_G);
}
