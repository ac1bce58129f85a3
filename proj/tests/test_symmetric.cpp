#include "doctest.h"
#include "stab/symmetric.hpp"

using namespace stab;

namespace {

ChainComplex K(std::uint32_t p) { return ChainComplex::sphere(p, 1); }
ChainComplex S(std::uint32_t p) { return ChainComplex::unit(p); }

std::size_t total(const SymRep& r) { return r.space().total_dim(); }

bool level_iso(const SymMap& f) { return f.is_level_iso(); }

}  // namespace

TEST_CASE("permutations") {
  const auto perms = all_perms(4);
  CHECK(perms.size() == 24);
  for (std::size_t i = 0; i < perms.size(); ++i) CHECK(perm_rank(perms[i]) == i);
  for (const auto& g : perms) {
    Perm h = perm_identity(4);
    const auto w = reduced_word(g);
    CHECK(static_cast<int>(w.size()) == perm_inversions(g));
    for (int i : w) h = perm_compose(perm_transposition(4, i), h);
    CHECK(h == g);
    CHECK(perm_compose(g, perm_inverse(g)) == perm_identity(4));
  }
  CHECK(subsets(4, 2).size() == 6);
  CHECK(shuffle_perm(3, {1}) == Perm{1, 0, 2});
}

TEST_CASE("Sym(K) actions carry Koszul signs") {
  for (std::uint32_t p : {2u, 3u}) {
    const auto s = sym_K(K(p), 3);
    CHECK(s.level(0).space() == S(p));
    CHECK(s.level(0).gens().empty());
    CHECK(s.level(2).gen(0) == ChainMap::scalar(s.space(2), -1));
    CHECK(s.level(3).act({1, 2, 0}) == ChainMap::identity(s.space(3)));
  }
  // Even-degree K: trivial actions.
  const auto even = sym_K(ChainComplex::sphere(3, 2), 2);
  CHECK(even.level(2).gen(0).is_identity());
}

TEST_CASE("SymRep validation") {
  const auto a = ChainComplex::interval(3);
  const auto two = direct_sum(S(3), S(3)).sum;
  Matrix u(3, 2, 2);
  u.set(0, 0, 1);
  u.set(0, 1, 1);
  u.set(1, 1, 1);
  CHECK_THROWS_AS(SymRep(2, two, {ChainMap(two, two, {u})}), ValidationError);
  CHECK_THROWS_AS(SymRep(3, a, {ChainMap::identity(a)}), ShapeError);
  CHECK_NOTHROW(SymRep(2, a, {ChainMap::scalar(a, -1)}));
}

TEST_CASE("tensor of symmetric sequences") {
  const std::uint32_t p = 3;
  const auto f1 = free_sym(1, S(p), K(p), 2);
  SymSeq tilde{SymRep::trivial(0, ChainComplex::zero(p)), induced_free(1, S(p)),
               SymRep::trivial(2, ChainComplex::zero(p))};
  const SeqTensor t(tilde, tilde);
  CHECK(total(t.level(0)) == 0);
  CHECK(total(t.level(1)) == 0);
  CHECK(total(t.level(2)) == 2);
  // Unit sequence on the left.
  const SymSeq unit{SymRep::trivial(0, S(p)), SymRep::trivial(1, ChainComplex::zero(p)),
                    SymRep::trivial(2, ChainComplex::zero(p))};
  const auto y = sequence_of(f1);
  const SeqTensor u(unit, y);
  for (int n = 0; n <= 2; ++n) CHECK(u.level(n).space().dims() == y[static_cast<std::size_t>(n)].space().dims());
}

TEST_CASE("smash unit law and free smash comparison") {
  for (std::uint32_t p : {2u, 3u}) {
    std::mt19937_64 rng(p);
    std::vector<SymmetricSpectrum> xs{sym_K(K(p), 3), free_sym(1, ChainComplex::interval(p), K(p), 3),
                                      cofree_sym(2, S(p), K(p), 3)};
    for (int i = 0; i < 2; ++i) xs.push_back(random_sym_spectrum(K(p), rng, 3));
    for (const auto& x : xs) CHECK(level_iso(smash_unit_map(x)));
    const auto f11 = smash(free_sym(1, S(p), K(p), 3), free_sym(1, S(p), K(p), 3));
    CHECK(f11.space(2).dim(0) == 2);
    CHECK(f11.space(2).total_dim() == 2);
    for (int n = 0; n <= 1; ++n) {
      for (int m = 0; m <= 1; ++m) {
        CHECK(level_iso(free_smash_comparison(n, S(p), m, ChainComplex::interval(p), K(p), 3)));
      }
    }
    const auto z = SymmetricSpectrum::zero(K(p), 3);
    const auto sz = smash(z, xs[1]);
    for (int n = 0; n <= 3; ++n) CHECK(sz.space(n).is_zero());
  }
}

TEST_CASE("free, evaluation and cofree") {
  const std::uint32_t p = 3;
  const auto a = ChainComplex::interval(p);
  const auto f0 = free_sym(0, a, K(p), 3);
  CHECK(f0.space(0) == a);
  CHECK(f0.space(2) == tensor(tensor(a, K(p)), K(p)));
  CHECK(eval_sym(3, free_sym(3, a, K(p), 3)).space().total_dim() == 6 * a.total_dim());
  for (std::uint32_t q : {2u, 3u}) {
    std::mt19937_64 rng(q + 7);
    std::vector<SymAdjunctionSample> samples{{0, S(q), sym_K(K(q), 3)}};
    for (int i = 0; i < 4; ++i) {
      samples.push_back({i % 3, random_complex(q, rng, {2, 2}), random_sym_spectrum(K(q), rng, 3)});
    }
    for (auto kind : {AdjunctionKind::FreeEval, AdjunctionKind::EvalCofree, AdjunctionKind::ShiftTS}) {
      const auto r = sym_adjunction_check(kind, samples);
      CHECK(r.checked == samples.size());
      CHECK(r.ok());
    }
  }
}

TEST_CASE("latching objects") {
  for (std::uint32_t p : {2u, 3u}) {
    const auto a = ChainComplex::interval(p);
    const auto f0 = free_sym(0, a, K(p), 3);
    CHECK(latching(0, f0).object.space().is_zero());
    for (int n = 1; n <= 3; ++n) {
      const auto l = latching(n, f0);
      CHECK(l.object.space() == f0.space(n));
      CHECK(is_iso(l.map));
    }
    CHECK(latching(1, free_sym(1, a, K(p), 3)).object.space().is_zero());
  }
}

TEST_CASE("symmetric cofibrations") {
  const std::uint32_t p = 2;
  const auto z = SymmetricSpectrum::zero(K(p), 3);
  for (int n = 0; n <= 2; ++n) {
    CHECK(is_sym_cofibration(SymMap::zero(z, free_sym(n, ChainComplex::interval(p), K(p), 3))));
  }
  CHECK(is_sym_cofibration(SymMap::identity(sym_K(K(p), 3))));
  // A map whose level-1 corner is not injective.
  const auto f0 = free_sym(0, S(p), K(p), 3);
  CHECK_FALSE(is_sym_cofibration(SymMap::zero(f0, z)));
  // 0 → (0, 0, S with trivial Σ_2 action) is injective everywhere, but the
  // level-2 cokernel is not projective over F_2[Σ_2].
  const auto zero = ChainComplex::zero(p);
  const SymmetricSpectrum triv(K(p),
                               {SymRep::trivial(0, zero), SymRep::trivial(1, zero), SymRep::trivial(2, S(p))},
                               {ChainMap::zero(tensor(zero, K(p)), zero), ChainMap::zero(tensor(zero, K(p)), S(p))});
  CHECK_FALSE(is_sym_cofibration(SymMap::zero(z.truncate(2), triv)));
  // Cofree spectra are not cofibrant: L_3 receives X_2 ⊗ K but X_3 = 0.
  CHECK_FALSE(is_sym_cofibration(SymMap::zero(z, cofree_sym(2, S(p), K(p), 3))));
  CHECK(is_degreewise_projective(induced_free(2, S(p))));
  CHECK_FALSE(is_degreewise_projective(SymRep::trivial(2, S(p))));
  CHECK(is_degreewise_projective(SymRep::trivial(2, S(3))));
}

TEST_CASE("shifts") {
  const std::uint32_t p = 3;
  const auto t = shift_t_sym(free_sym(0, S(p), K(p), 3));
  CHECK(t.space(1).dim(0) == 1);
  CHECK(t.space(1).total_dim() == 1);
  const auto x = free_sym(1, ChainComplex::interval(p), K(p), 3);
  const auto s = shift_s_sym(x);
  for (int n = 0; n < 3; ++n) {
    CHECK(s.space(n) == x.space(n + 1));
    for (int i = 0; i + 1 < n; ++i) CHECK(s.level(n).gen(i) == x.level(n + 1).gen(i + 1));
  }
}

TEST_CASE("Omega spectra") {
  for (std::uint32_t p : {2u, 3u}) {
    CHECK(is_omega_spectrum(free_sym(0, S(p), K(p), 3), 2));
    CHECK(is_omega_spectrum(sym_K(K(p), 3), 2));
    CHECK_FALSE(is_omega_spectrum(free_sym(1, S(p), K(p), 3), 2));
    CHECK(is_omega_spectrum(SymmetricSpectrum::zero(K(p), 3), 2));
  }
}

TEST_CASE("the maps s_n") {
  const std::uint32_t p = 3;
  const auto s0 = sym_map_s_n(0, S(p), K(p), 3);
  CHECK(s0.comp(1).source() == s0.source().space(1));
  // a = S, n = 0: at level 1 both sides are K and the map is the identity.
  CHECK(s0.comp(1).is_identity());
  // The naive colimit cannot see that s_n is a stable equivalence: the level
  // homology of F_1(K) grows with n, so its colimit never stabilizes.
  const auto f = sym_map_s_n(0, S(p), K(p), 4);
  for (int k = -3; k <= 3; ++k) CHECK(naive_pi(f.target(), k).value == (k == 0 ? 1u : 0u));
  CHECK_THROWS_AS(naive_pi(f.source(), 0), UnstableColimit);
  for (int n = 1; n <= 3; ++n) {
    CHECK(f.source().space(n).dim(n) == static_cast<std::size_t>(n));
  }
}

TEST_CASE("naive homotopy groups of suspension spectra") {
  for (std::uint32_t p : {2u, 3u}) {
    const auto x = free_sym(0, S(p), K(p), 3);
    for (int k = -3; k <= 3; ++k) CHECK(naive_pi(x, k).value == (k == 0 ? 1u : 0u));
  }
}

TEST_CASE("pushout products") {
  const std::uint32_t p = 3;
  const auto a = ChainComplex::interval(p), b = K(p);
  const auto z = ChainComplex::zero(p);
  const auto pp = pushout_product(ChainMap::zero(z, a), ChainMap::zero(z, b));
  CHECK(pp.source().is_zero());
  CHECK(pp.target() == tensor(a, b));
  const auto f = ChainMap::zero(z, a);
  const auto fi = pushout_product(f, ChainMap::identity(S(p)));
  CHECK(is_iso(fi));
  CHECK(fi.target() == tensor(a, S(p)));
  CHECK(is_injective(fi));
  // Endpoint inclusion S → I against 0 → K.
  Matrix m(p, 2, 1);
  m.set(0, 0, 1);
  const ChainMap i0(S(p), a, {m});
  const auto c = pushout_product(i0, ChainMap::zero(z, K(p)));
  CHECK(is_injective(c));
  CHECK(is_quasi_iso(c));
  // Symmetric version: (0 → F_0 S) □ (0 → K) is a cofibration.
  const auto zs = SymmetricSpectrum::zero(K(p), 2);
  const auto sp = pushout_product(SymMap::zero(zs, free_sym(0, S(p), K(p), 2)), ChainMap::zero(z, K(p)));
  CHECK(is_sym_cofibration(sp));
}

TEST_CASE("levelwise functors") {
  const std::uint32_t p = 3;
  const auto x = free_sym(1, ChainComplex::interval(p), K(p), 3);
  BaseFunctor id{[](const ChainComplex& c) { return c; }, [](const ChainMap& f) { return f; },
                 [](const ChainComplex& c) { return ChainMap::identity(tensor(c, K(3))); }};
  CHECK(apply_functor_levelwise(id, x) == x);
  const auto m = K(p);
  const auto t = tensor_with(x, m);
  for (int n = 0; n <= 3; ++n) CHECK(t.space(n) == tensor(x.space(n), m));
  // F_n commutes with the functor on probes.
  CHECK(tensor_with(free_sym(1, S(p), K(p), 3), m).space(2).dims() == free_sym(1, m, K(p), 3).space(2).dims());
  const ChainComplex z = ChainComplex::zero(p);
  BaseFunctor zero{[z](const ChainComplex&) { return z; },
                   [z](const ChainMap&) { return ChainMap::zero(z, z); },
                   [z](const ChainComplex&) { return ChainMap::zero(tensor(z, K(3)), z); }};
  const auto zx = apply_functor_levelwise(zero, x);
  for (int n = 0; n <= 3; ++n) CHECK(zx.space(n).is_zero());
}

TEST_CASE("symmetric lifting") {
  const std::uint32_t p = 2;
  const auto z = SymmetricSpectrum::zero(K(p), 2);
  const auto x = free_sym(0, S(p), K(p), 2);
  const auto i = SymMap::zero(z, x);
  CHECK(has_lift_sym(i, SymMap::zero(x, z), SymMap::zero(z, x), SymMap::zero(x, z)));
  CHECK_FALSE(has_lift_sym(i, SymMap::zero(z, x), SymMap::identity(z), SymMap::identity(x)));
}
