#include "doctest.h"
#include "stab/oracle.hpp"

using namespace stab;

TEST_CASE("small complexes") {
  // Over F_2 with total dimension ≤ 1 in degrees 0..1: 0, S^0, S^1.
  CHECK(small_complexes(2, 1, 1).size() == 3);
  // Total dimension 2 in degrees 0..1 adds S^0⊕S^0, S^1⊕S^1 and two
  // complexes on (1,1): zero differential and the disk.
  CHECK(small_complexes(2, 2, 1).size() == 7);
  for (const auto& c : small_complexes(3, 3, 2)) CHECK(c.total_dim() <= 3);
}

TEST_CASE("map enumeration") {
  const auto k = ChainComplex::sphere(2, 1);
  const auto s = free_spectrum(0, ChainComplex::unit(2), k);
  // Maps F_0S → F_0S are the scalars.
  CHECK(all_spectrum_maps(s, s).size() == 2);
  const auto fs = free_sym(0, ChainComplex::unit(2), k, 2);
  CHECK(all_sym_maps(fs, fs).size() == 2);
}

TEST_CASE("cone resolutions are trivial fibrations") {
  const std::uint32_t p = 2;
  const ChainComplex q(p, {1, 2}, {Matrix::from_rows(p, {{1, 1}})});
  const SymRep qrep(2, q, {ChainMap(q, q, {Matrix::identity(p, 1), Matrix::from_rows(p, {{0, 1}, {1, 0}})})});
  for (const auto& t : {SymRep::trivial(2, ChainComplex::unit(p)), qrep, induced_free(3, ChainComplex::disk(p, 1))}) {
    const auto c = cone_resolution(t);
    CHECK(is_equivariant(c.epsilon, c.complex, t));
    CHECK(is_quasi_iso(c.epsilon));
    CHECK(is_surjective(c.epsilon));
  }
}

TEST_CASE("lifting oracle on known cases") {
  const std::uint32_t p = 2;
  const auto k = ChainComplex::sphere(p, 1);
  const auto s = ChainComplex::unit(p);
  // F_0S → 0 is not a cofibration: the disk family detects it.
  const auto f0 = free_spectrum(0, s, k);
  const auto z = Spectrum::zero(k);
  const auto v0 = lifting_oracle(SpectrumMap::zero(f0, z));
  CHECK_FALSE(v0.lifts);
  CHECK(lifting_oracle(SpectrumMap::zero(z, f0)).lifts);
  CHECK(lifting_oracle(s_map(0, s, k)).lifts == is_projective_cofibration(s_map(0, s, k)));

  // An acyclic-looking Σ_2 complex with a trivial summand in degree 0:
  // injective corner, non-projective cokernel.
  const ChainComplex q(p, {1, 2}, {Matrix::from_rows(p, {{1, 1}})});
  const SymRep qrep(2, q, {ChainMap(q, q, {Matrix::identity(p, 1), Matrix::from_rows(p, {{0, 1}, {1, 0}})})});
  const auto zero = ChainComplex::zero(p);
  const SymmetricSpectrum b(k, {SymRep::trivial(0, zero), SymRep::trivial(1, zero), qrep},
                            {ChainMap::zero(tensor(zero, k), zero), ChainMap::zero(tensor(zero, k), q)});
  const auto f = SymMap::zero(SymmetricSpectrum::zero(k, 2), b);
  CHECK_FALSE(is_sym_cofibration(f));
  CHECK_FALSE(lifting_oracle(f).lifts);
  // A trivial Σ_2 action on S at level 2 is caught by the W family.
  const SymmetricSpectrum t(k, {SymRep::trivial(0, zero), SymRep::trivial(1, zero), SymRep::trivial(2, s)},
                            {ChainMap::zero(tensor(zero, k), zero), ChainMap::zero(tensor(zero, k), s)});
  CHECK_FALSE(lifting_oracle(SymMap::zero(SymmetricSpectrum::zero(k, 2), t)).lifts);
  const auto fr = free_sym(1, s, k, 2);
  CHECK(lifting_oracle(SymMap::zero(SymmetricSpectrum::zero(k, 2), fr)).lifts);
}
