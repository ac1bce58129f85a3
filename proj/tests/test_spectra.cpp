#include "doctest.h"
#include "stab/spectra.hpp"

using namespace stab;

namespace {

ChainComplex K(std::uint32_t p) { return ChainComplex::sphere(p, 1); }
ChainComplex S(std::uint32_t p) { return ChainComplex::unit(p); }

Spectrum sphere(std::uint32_t p) { return free_spectrum(0, S(p), K(p)); }

std::vector<Spectrum> corpus(std::uint32_t p) {
  std::vector<Spectrum> out{sphere(p), free_spectrum(2, S(p), K(p)),
                            free_spectrum(1, ChainComplex::interval(p), K(p)),
                            free_spectrum(0, ChainComplex::disk(p, 2), K(p)),
                            cofree(1, S(p), K(p))};
  std::mt19937_64 rng(p * 101);
  for (int i = 0; i < 4; ++i) out.push_back(random_spectrum(K(p), rng));
  return out;
}

}  // namespace

TEST_CASE("free spectra and evaluation") {
  const auto s = sphere(3);
  CHECK(s.level(0) == S(3));
  CHECK(s.level(2) == tensor(K(3), K(3)));
  CHECK(free_spectrum(2, S(3), K(3)).level(1).is_zero());
  CHECK(eval(3, free_spectrum(1, S(3), K(3))) == tensor(K(3), K(3)));
  CHECK(eval(0, free_spectrum(0, ChainComplex::interval(3), K(3))) == ChainComplex::interval(3));
  CHECK_THROWS(Spectrum(ChainComplex::interval(2), {S(2)}, {}));
}

TEST_CASE("structure maps are validated") {
  CHECK_THROWS_AS(Spectrum(K(2), {S(2), S(2)}, {ChainMap::identity(S(2))}), ShapeError);
  const auto s = sphere(2);
  std::vector<ChainMap> bad{ChainMap::zero(s.level(0), s.level(0)),
                            ChainMap::identity(s.level(1))};
  CHECK_THROWS_AS(SpectrumMap(s, s, bad), ValidationError);
}

TEST_CASE("adjunction triangles") {
  for (std::uint32_t p : {2u, 3u}) {
    std::mt19937_64 rng(p);
    std::vector<AdjunctionSample> samples{{0, S(p), sphere(p)}};
    for (int i = 0; i < 4; ++i) {
      samples.push_back({i % 3, random_complex(p, rng, {3, 2}), random_spectrum(K(p), rng)});
    }
    for (auto kind : {AdjunctionKind::FreeEval, AdjunctionKind::EvalCofree, AdjunctionKind::ShiftTS}) {
      const auto r = adjunction_check(kind, samples);
      CHECK(r.checked == samples.size());
      CHECK(r.ok());
    }
  }
}

TEST_CASE("prolongations") {
  const std::uint32_t p = 3;
  const auto a = ChainComplex::interval(p);
  CHECK(prolong_G_no_twist(free_spectrum(1, a, K(p))) == free_spectrum(1, tensor(a, K(p)), K(p)));
  CHECK(prolong_G_no_twist(sphere(p)).level(0) == K(p));
  CHECK(shift_s(sphere(p)) == free_spectrum(0, K(p), K(p)));
  CHECK(shift_t(free_spectrum(1, a, K(p))) == free_spectrum(2, a, K(p)));

  // Twisted and untwisted structure maps differ by −1, so (−1)^n levelwise
  // is an isomorphism between the two.
  for (const auto& x : corpus(p)) {
    const auto tw = tensor_K_twist(x), nt = prolong_G_no_twist(x);
    for (int n = 0; n < 3; ++n) CHECK(tw.sigma(n) == nt.sigma(n).scaled(-1));
    std::vector<ChainMap> comps;
    for (int n = 0; n <= std::max(tw.tail_index(), nt.tail_index()); ++n) {
      comps.push_back(ChainMap::scalar(tw.level(n), n % 2 == 0 ? 1 : -1));
    }
    const SpectrumMap iso(tw, nt, comps);
    for (int n = 0; n < 5; ++n) CHECK(is_iso(iso.comp(n)));
  }
}

TEST_CASE("sU = Us and the ι identity") {
  for (std::uint32_t p : {2u, 3u}) {
    for (const auto& x : corpus(p)) {
      CHECK(shift_s(prolong_U(x)) == prolong_U(shift_s(x)));
      const auto r = R_once(x);
      const auto rr = R_once(r.value);
      CHECK(rr.iota == R_map(r.iota));
    }
  }
  const auto z = Spectrum::zero(K(2));
  CHECK(R_once(z).value.level(0).is_zero());
}

TEST_CASE("R infinity") {
  const std::uint32_t p = 2;
  const auto r = R_infinity(free_spectrum(1, S(p), K(p)));
  CHECK(homology(r.value.level(1), 0) == 1);
  for (const auto& x : corpus(p)) {
    const auto ri = R_infinity(x);
    CHECK(is_U_spectrum(ri.value, 4));
    CHECK(is_stable_equivalence(ri.j, {}));
    if (is_U_spectrum(x, 4)) CHECK(is_level_equivalence(ri.j, {}));
  }
}

TEST_CASE("stable homotopy groups") {
  for (std::uint32_t p : {2u, 3u}) {
    for (int k = -5; k <= 5; ++k) CHECK(stable_pi(sphere(p), k).value == (k == 0 ? 1u : 0u));
    for (int n = 0; n < 4; ++n) CHECK(stable_pi(free_spectrum(n, S(p), K(p)), -n).value == 1);
  }
  // Degenerate suspension K = S: stable groups are the homology of level 0.
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5; ++i) {
    const auto a = random_complex(3, rng);
    const auto x = free_spectrum(0, a, S(3));
    for (int k = -2; k <= 5; ++k) {
      CHECK(stable_pi(x, k).value == (k < 0 ? 0 : homology(a, k)));
    }
  }
}

TEST_CASE("stable equivalences") {
  for (std::uint32_t p : {2u, 3u}) {
    for (int n = 0; n < 3; ++n) {
      CHECK(is_stable_equivalence(s_map(n, S(p), K(p)), {}));
      CHECK(is_stable_equivalence(s_map(n, ChainComplex::disk(p, 2), K(p)), {}));
    }
    const auto s = sphere(p);
    CHECK_FALSE(is_stable_equivalence(SpectrumMap::zero(Spectrum::zero(K(p)), s), {}));
    CHECK_FALSE(is_level_equivalence(s_map(0, S(p), K(p)), {}));
  }
}

TEST_CASE("projective cofibrations") {
  const std::uint32_t p = 2;
  const auto z = Spectrum::zero(K(p));
  CHECK(is_projective_cofibration(SpectrumMap::zero(z, free_spectrum(2, ChainComplex::interval(p), K(p)))));
  // s_n is a stable equivalence but not a cofibration: its level-(n+2) corner is 2-to-1.
  CHECK_FALSE(is_projective_cofibration(s_map(1, S(p), K(p))));
  // The identity of a spectrum with a non-injective corner is still a cofibration.
  CHECK(is_projective_cofibration(SpectrumMap::identity(sphere(p))));
  // 0 → cofree spectra are not (the structure maps are not injective corners).
  CHECK_FALSE(is_projective_cofibration(SpectrumMap::zero(z, cofree(1, S(p), K(p)))));
}

TEST_CASE("stable fibrations and pullbacks") {
  const std::uint32_t p = 2;
  const auto z = Spectrum::zero(K(p));
  const auto ri = R_infinity(free_spectrum(1, ChainComplex::disk(p, 1), K(p)));
  CHECK(is_stable_fibration(SpectrumMap::zero(ri.value, z), {}));
  // Over non-negative complexes U(K^{⊗(n+1)}) = K^{⊗n}, so the sphere is a U-spectrum.
  CHECK(is_U_spectrum(sphere(p), 4));
  CHECK(is_stable_fibration(SpectrumMap::zero(sphere(p), z), {}));
  CHECK_FALSE(is_U_spectrum(cofree(1, S(p), K(p)), 4));
  CHECK_FALSE(is_stable_fibration(SpectrumMap::zero(cofree(1, S(p), K(p)), z), {}));
  const auto s = sphere(p);
  const auto pb = pullback(SpectrumMap::identity(s), SpectrumMap::identity(s));
  CHECK(pb.value == s);
}

TEST_CASE("spectrum lifting") {
  const std::uint32_t p = 2;
  const auto z = Spectrum::zero(K(p));
  const auto s = sphere(p);
  // 0 → S has the LLP against S → 0; the only lift of id is id.
  const auto i = SpectrumMap::zero(z, s);
  const auto q = SpectrumMap::zero(s, z);
  auto h = has_lift(i, q, SpectrumMap::zero(z, s), SpectrumMap::zero(s, z));
  REQUIRE(h);
  CHECK(*h * i == SpectrumMap::zero(z, s));
  // 0 → S against 0 → S with g = id_S: a lift would split id_S through 0.
  CHECK_FALSE(has_lift(i, SpectrumMap::zero(z, s), SpectrumMap::identity(z),
                       SpectrumMap::identity(s)));
}

TEST_CASE("random spectrum maps are valid") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    const auto x = random_spectrum(K(3), rng), y = random_spectrum(K(3), rng);
    const auto f = random_spectrum_map(x, y, rng);
    CHECK((f * SpectrumMap::identity(x)) == f);
    CHECK(R_infinity_map(f).source() == R_infinity(x, std::max(x.tail_index(), y.tail_index()) + 1).value);
  }
}
