#include "doctest.h"
#include "stab/chain.hpp"

using namespace stab;

namespace {
ChainComplex K(std::uint32_t p) { return ChainComplex::sphere(p, 1); }
ChainComplex S(std::uint32_t p) { return ChainComplex::unit(p); }
}  // namespace

TEST_CASE("d∘d = 0 is enforced") {
  // 1 -> 1 -> 1 with identities composes to a nonzero map.
  CHECK_THROWS_AS(ChainComplex(2, {1, 1, 1}, {Matrix::identity(2, 1), Matrix::identity(2, 1)}),
                  ValidationError);
  CHECK_THROWS_AS(ChainComplex(2, {1, 2}, {Matrix::identity(2, 1)}), ShapeError);
}

TEST_CASE("tensor dimensions and unit law") {
  for (std::uint32_t p : {2u, 3u}) {
    const auto I = ChainComplex::interval(p);
    CHECK(tensor(I, I).dims() == std::vector<std::size_t>{4, 4, 1});
    CHECK(tensor(K(p), K(p)).dims() == std::vector<std::size_t>{0, 0, 1});
    CHECK(tensor(S(p), I) == I);
    CHECK(tensor(I, S(p)) == I);
  }
}

TEST_CASE("twist signs and involution") {
  const auto t = twist(K(3), K(3));
  CHECK(t.mat(2)(0, 0) == 2);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    auto a = random_complex(3, rng), b = random_complex(3, rng);
    CHECK((twist(b, a) * twist(a, b)).is_identity());
  }
  CHECK(twist(S(3), ChainComplex::interval(3)).is_identity());
}

TEST_CASE("associator is a chain isomorphism") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5; ++i) {
    auto a = random_complex(3, rng, {2, 2}), b = random_complex(3, rng, {2, 2}),
         c = random_complex(3, rng, {2, 2});
    auto al = associator(a, b, c);
    CHECK((associator_inverse(a, b, c) * al).is_identity());
  }
}

TEST_CASE("homology") {
  const auto I = ChainComplex::interval(2);
  CHECK(homology(I, 0) == 1);
  CHECK(homology(I, 1) == 0);
  CHECK(homology(K(2), 1) == 1);
  const auto D = ChainComplex::disk(2, 1);
  CHECK(homology(D, 0) == 0);
  CHECK(homology(D, 1) == 0);
}

TEST_CASE("quasi-isomorphisms") {
  const auto D = ChainComplex::disk(3, 1);
  CHECK(is_quasi_iso(ChainMap::identity(D)));
  CHECK(is_quasi_iso(ChainMap::zero(ChainComplex::zero(3), D)));
  CHECK(!is_quasi_iso(ChainMap::zero(ChainComplex::zero(3), K(3))));
}

TEST_CASE("loops_U examples") {
  for (std::uint32_t p : {2u, 3u}) {
    const auto kk = tensor(K(p), K(p));
    CHECK(loops_U(kk, K(p)) == K(p));
    std::mt19937_64 rng(p);
    auto x = random_complex(p, rng);
    CHECK(loops_U(x, S(p)) == x);
    CHECK(loops_U(K(p), K(p)) == S(p));
  }
}

TEST_CASE("adjunction round trips") {
  for (std::uint32_t p : {2u, 3u}) {
    std::mt19937_64 rng(100 + p);
    for (int trial = 0; trial < 10; ++trial) {
      const auto k = trial % 2 ? K(p) : random_complex(p, rng, {2, 2});
      const auto a = random_complex(p, rng, {3, 2});
      const auto x = random_complex(p, rng, {4, 2});
      const auto phi = random_chain_map(tensor(a, k), x, rng);
      const auto flat = adjoint_GU(phi, a, k);
      CHECK(adjoint_UG(flat, x, k) == phi);
      const auto psi = random_chain_map(a, loops_U(x, k), rng);
      CHECK(adjoint_GU(adjoint_UG(psi, x, k), a, k) == psi);
    }
    // adjoint of identity on S⊗K is the unit, adjoint of zero is zero
    CHECK(adjoint_GU(ChainMap::identity(tensor(S(p), K(p))), S(p), K(p)) == unit_GU(S(p), K(p)));
    const auto z = ChainMap::zero(tensor(S(p), K(p)), K(p));
    CHECK(adjoint_GU(z, S(p), K(p)).is_zero());
  }
}

TEST_CASE("pushouts, coequalizers, cokernels") {
  const std::uint32_t p = 3;
  std::mt19937_64 rng(9);
  auto a = random_complex(p, rng), c = random_complex(p, rng);
  auto g = random_chain_map(a, c, rng);
  auto po = pushout(ChainMap::identity(a), g);
  CHECK(po.complex.dims() == c.dims());
  auto z = ChainComplex::zero(p);
  CHECK(pushout(ChainMap::identity(z), ChainMap::identity(z)).complex.is_zero());
  // mapping cylinder body for A = B = S, r = identity
  const auto I = ChainComplex::interval(p);
  const auto i0 = ChainMap(S(p), I, {Matrix::from_rows(p, {{1}, {0}})});
  auto cyl = pushout(ChainMap::identity(S(p)), i0);
  CHECK(cyl.complex.dims() == std::vector<std::size_t>{2, 1});
  auto b = random_complex(p, rng);
  auto f = random_chain_map(a, b, rng);
  CHECK(coequalizer(f, f).complex.dims() == b.dims());
  CHECK(coequalizer(ChainMap::identity(b), ChainMap::zero(b, b)).complex.is_zero());
}

TEST_CASE("lifting problems") {
  const std::uint32_t p = 2;
  const auto s = S(p), z = ChainComplex::zero(p);
  const auto D = ChainComplex::disk(p, 1);
  // i: 0 -> S, p: D -> S projection onto degree 0? D is acyclic so use S ⊕ D -> S.
  auto sum = direct_sum(s, D);
  auto proj = sum.pr_a;
  auto lift = has_lift(ChainMap::zero(z, s), proj, ChainMap::zero(z, sum.sum), ChainMap::identity(s));
  CHECK(lift.has_value());
  auto none = has_lift(ChainMap::zero(z, s), ChainMap::zero(z, s), ChainMap::identity(z),
                       ChainMap::identity(s));
  CHECK(!none.has_value());
  const auto I = ChainComplex::interval(p);
  const auto i0 = ChainMap(s, I, {Matrix::from_rows(p, {{1}, {0}})});
  auto c = classify_map(i0);
  CHECK(c.cofibration);
  CHECK(c.weak_equivalence);
  auto zk = classify_map(ChainMap::zero(z, K(p)));
  CHECK(zk.cofibration);
  CHECK(!zk.weak_equivalence);
}

TEST_CASE("homotopy finder") {
  const std::uint32_t p = 3;
  const auto D = ChainComplex::disk(p, 2);
  // identity of an acyclic complex is null-homotopic
  auto h = find_homotopy(ChainMap::zero(D, D), ChainMap::identity(D));
  CHECK(h.has_value());
  CHECK(!find_homotopy(ChainMap::zero(K(p), K(p)), ChainMap::identity(K(p))).has_value());
}
