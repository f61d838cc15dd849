#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sflow/error.hpp"
#include "sflow/operators.hpp"
#include "sflow/random.hpp"
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

}  // namespace

TEST_CASE("classification by tails") {
  CHECK(classify({true, false}) == FSComponent::FSplus);
  CHECK(classify({false, true}) == FSComponent::FSminus);
  CHECK(classify({true, true}) == FSComponent::FSi);
  CHECK(classify({false, false}) == FSComponent::FiniteDim);
}

TEST_CASE("evaluate") {
  const auto p = testing::scalar(-1, 2);
  CHECK(p.block_at(0.5) == Matrix{{0}});
  const auto q = OperatorPath::piecewise_linear({0, 1}, {Matrix{{-1}}, Matrix{{1}}});
  CHECK(q.block_at(0.25)(0, 0) == doctest::Approx(-0.5));
  const auto r = OperatorPath::piecewise_linear({0, 0.3, 1}, {Matrix{{-1}}, Matrix{{0.7}}, Matrix{{0.1}}});
  CHECK(r.block_at(1.0) == Matrix{{0.1}});
  CHECK(kind_of([&] { p.block_at(1.5); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([&] { p.block_at(-0.1); }) == ErrorKind::OutOfRange);
}

TEST_CASE("lipschitz bounds hold on random pairs") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  EquivariantSampler s(OrthogonalAction::trivial(trivial_group(), 4), 9);
  for (int i = 0; i < 20; ++i) {
    const auto p = s.path({}, i % 2 == 0);
    for (int k = 0; k < 20; ++k) {
      double l = u(rng), m = u(rng);
      if (l > m) std::swap(l, m);
      const double d = spectral_norm(p.block_at(l) - p.block_at(m));
      CHECK(d <= p.lipschitz() * (m - l) + 1e-12);
      CHECK(d <= p.lipschitz_on(l, m) * (m - l) + 1e-12);
    }
  }
}

TEST_CASE("block_spectrum") {
  const auto d = block_spectrum(CPS(Matrix::diagonal({3.0, -1.0})));
  REQUIRE(d.clusters.size() == 2);
  CHECK(d.clusters[0].value == doctest::Approx(-1.0));
  CHECK(d.clusters[1].value == doctest::Approx(3.0));

  const Matrix swap{{0, 1}, {1, 0}};
  const auto s = block_spectrum(CPS(swap));
  REQUIRE(s.clusters.size() == 2);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
  for (const auto& c : s.clusters) {
    const Matrix v = c.vectors;
    CHECK(max_abs(swap * v - c.value * v) < 1e-9);
    CHECK(std::abs(std::abs(v(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
  }

  const auto i3 = block_spectrum(CPS(Matrix::identity(3)));
  REQUIRE(i3.clusters.size() == 1);
  CHECK(i3.clusters[0].multiplicity() == 3);
}

TEST_CASE("spectral_interval_frame") {
  const CPS a(Matrix::diagonal({0.3, -0.5}));
  const Matrix f = spectral_interval_frame(a, 0.0, 0.8);
  REQUIRE(f.cols() == 1);
  CHECK(std::abs(f(0, 0)) == doctest::Approx(1.0));
  CHECK(spectral_interval_frame(a, 0.1, 0.2).cols() == 0);
  const CPS minus(Matrix::diagonal({0.3, -0.5}), {false, true});
  CHECK(kind_of([&] { spectral_interval_frame(minus, -2.0, 0.0); }) == ErrorKind::InfiniteRank);
  CHECK(kind_of([&] { spectral_interval_frame(a, 0.3, 1.0); }) == ErrorKind::BoundaryHit);
}

TEST_CASE("compress") {
  const auto p = compress(testing::scalar(-1, 2, {false, true}), 2);
  CHECK(p.dim() == 3);
  CHECK(p.component() == FSComponent::FiniteDim);
  CHECK(testing::near(p.block_at(0.25), Matrix::diagonal({-0.5, -1.0, -1.0})));
  const auto q = compress(testing::scalar(-1, 2, {true, true}), 0);
  CHECK(q.dim() == 1);
  const auto f = testing::scalar(-1, 2);
  CHECK(testing::near(compress(f, 5).block_at(0.7), f.block_at(0.7)));
}

TEST_CASE("morse_class") {
  const auto trivial = OrthogonalAction::trivial(trivial_group(), 2);
  CHECK(morse_class(CPS(Matrix::diagonal({-2.0, 3.0})), trivial).coeffs() == testing::coeffs({1}));
  CHECK(morse_class(CPS(Matrix::identity(2)), trivial).is_zero());
  const auto flip = testing::z2_flip();
  CHECK(morse_class(CPS(Matrix::diagonal({-1.0, 1.0})), flip).coeffs() == testing::coeffs({1, 0}));
  CHECK(kind_of([&] { morse_class(CPS(Matrix::diagonal({0.0, 1.0})), trivial); }) == ErrorKind::NotInvertible);
  CHECK(kind_of([&] { morse_class(CPS(Matrix{{0, 1}, {1, 0}}), flip); }) == ErrorKind::NotEquivariant);
}

TEST_CASE("morse_class matches the character-formula oracle") {
  for (const auto& g : {cyclic_group(3), cyclic_group(4), dihedral_group(3)}) {
    std::vector<int> copies(g->table().size(), 2);
    const auto action = OrthogonalAction::from_multiplicities(g, copies);
    EquivariantSampler s(action, 4);
    for (int i = 0; i < 10; ++i) {
      const Matrix m = s.invertible(0.1) + (-0.3) * Matrix::identity(action.dim());
      if (min_abs_eigenvalue(m) < 1e-3) continue;
      CHECK(morse_class(CPS(m), action).coeffs() == oracle::morse_multiplicities(m, action));
    }
  }
}

TEST_CASE("path constructions") {
  CHECK(direct_sum(CPS(Matrix{{1}}), CPS(Matrix{{-1}})).block() == Matrix::diagonal({1.0, -1.0}));
  CHECK(direct_sum(CPS(Matrix{{1}}, {true, false}), CPS(Matrix{{1}}, {false, true})).tails() == Tails{true, true});

  const auto c = concatenate(testing::scalar(-1, 2), OperatorPath::constant(Matrix{{1}}));
  CHECK(c.kind() == PathKind::PiecewiseLinear);
  CHECK(c.knots() == std::vector<double>{0, 0.5, 1});
  CHECK(c.block_at(0.25)(0, 0) == doctest::Approx(0.0));

  const auto r = reverse(testing::scalar(-1, 2));
  CHECK(r.block_at(0.0)(0, 0) == doctest::Approx(1.0));
  CHECK(r.block_at(0.75)(0, 0) == doctest::Approx(-0.5));

  CHECK(kind_of([] { concatenate(testing::scalar(-1, 2), OperatorPath::constant(Matrix{{2}})); }) ==
        ErrorKind::EndpointMismatch);
  CHECK(kind_of([] {
          concatenate(testing::scalar(-1, 2), OperatorPath::constant(Matrix{{1}}, {true, false}));
        }) == ErrorKind::TailMismatch);

  const auto n = negate(testing::scalar(-1, 2, {true, false}));
  CHECK(n.tails() == Tails{false, true});
  CHECK(n.block_at(0.0)(0, 0) == doctest::Approx(1.0));

  const auto piece = restrict(testing::scalar(-1, 2), 0.25, 0.75);
  CHECK(piece.block_at(0.0)(0, 0) == doctest::Approx(-0.5));
  CHECK(piece.block_at(1.0)(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("direct sums take the union of spectra") {
  EquivariantSampler s(OrthogonalAction::trivial(trivial_group(), 3), 2);
  for (int i = 0; i < 10; ++i) {
    const Matrix a = s.symmetric(), b = s.symmetric();
    auto ea = eigh(a).values;
    const auto eb = eigh(b).values;
    ea.insert(ea.end(), eb.begin(), eb.end());
    std::sort(ea.begin(), ea.end());
    const auto es = eigh(direct_sum(CPS(a), CPS(b)).block()).values;
    for (std::size_t k = 0; k < es.size(); ++k) CHECK(std::abs(es[k] - ea[k]) < 1e-8);
  }
}

TEST_CASE("check_equivariance") {
  const auto flip = testing::z2_flip();
  CHECK(check_equivariance(CPS(Matrix::diagonal({2.0, -5.0})), flip) == doctest::Approx(0.0));
  CHECK(check_equivariance(CPS(Matrix{{0, 1}, {1, 0}}), flip) == doctest::Approx(2.0));
  CHECK(check_equivariance(CPS(Matrix{{0, 1}, {1, 0}}), OrthogonalAction::trivial(trivial_group(), 2)) == 0.0);
  CHECK(kind_of([&] { check_equivariance(CPS(Matrix::identity(3)), flip); }) == ErrorKind::DimMismatch);
}

TEST_CASE("compression of an equivariant path stays equivariant") {
  const auto action = OrthogonalAction::from_multiplicities(dihedral_group(3), {1, 1, 1});
  EquivariantSampler s(action, 8);
  const auto p = compress(s.path({true, true}, true), 2);
  const auto ext = action.extended(4);
  for (double l : {0.0, 0.3, 1.0}) CHECK(check_equivariance(p.evaluate(l), ext) < 1e-10);
}
