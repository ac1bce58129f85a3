#pragma once

#include <string>
#include <vector>

#include "stab/spectra.hpp"
#include "stab/symmetric.hpp"

namespace stab {

// -- exhaustive small instances ---------------------------------------------

/// Every complex over F_p of total dimension ≤ max_total living in degrees
/// 0..max_degree (all differentials with d∘d = 0).
std::vector<ChainComplex> small_complexes(std::uint32_t p, std::size_t max_total, int max_degree);

/// Every spectrum with tail index ≤ 1 whose stored levels come from
/// small_complexes and have total dimension ≤ max_total.
std::vector<Spectrum> small_spectra(const ChainComplex& k, std::size_t max_total, int max_degree);
/// Every symmetric spectrum of the given horizon with total dimension
/// ≤ max_total (all Σ_n actions and structure maps).
std::vector<SymmetricSpectrum> small_sym_spectra(const ChainComplex& k, std::size_t max_total,
                                                 int max_degree, int horizon);

std::size_t stored_total_dim(const Spectrum& x);
std::size_t stored_total_dim(const SymmetricSpectrum& x);

/// Every map between two spectra (the map spaces must be small).
std::vector<SpectrumMap> all_spectrum_maps(const Spectrum& a, const Spectrum& b);
std::vector<SymMap> all_sym_maps(const SymmetricSpectrum& a, const SymmetricSpectrum& b);

// -- the lifting oracle -----------------------------------------------------

struct LiftingVerdict {
  bool lifts = true;
  std::size_t squares = 0;  // lifting problems solved
  std::string obstruction;  // the first square without a diagonal
};

/// Decide whether f has the left lifting property against a family of level
/// trivial fibrations p : X → Y built on B = target(f): X and Y agree with B
/// below a level m, are zero above it, and p_m is a surjective
/// quasi-isomorphism. Every square of that shape is a linear combination of
/// finitely many basis squares, and the squares admitting a diagonal form a
/// subspace, so solving the basis squares decides all of them.
///
/// Spectra: p_m is D^{k+1} → 0 for every relevant k.
/// Symmetric spectra: p_m runs through F_p[Σ_m] ⊗ D^{k+1} → 0, the Σ_2
/// family W_k → S^k, the cone resolution C(B_m) → B_m and its pullback along
/// the cokernel of the latching corner.
LiftingVerdict lifting_oracle(const SpectrumMap& f);
LiftingVerdict lifting_oracle(const SymMap& f);

/// A surjective equivariant quasi-isomorphism C(T) → T: the cone of the
/// kernel of F_p[Σ_n] ⊗ T → T.
struct ConeResolution {
  SymRep complex;
  ChainMap epsilon;
};
ConeResolution cone_resolution(const SymRep& t);

}  // namespace stab
