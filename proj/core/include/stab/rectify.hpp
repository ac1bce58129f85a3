#pragma once

#include <optional>
#include <vector>

#include "stab/chain.hpp"
#include "stab/spectra.hpp"

namespace stab {

/// A cylinder object for S with a contraction H : I⊗I → I satisfying
/// H(1⊗i0) = H(i0⊗1) = i0∘π and H(1⊗i1) = id.
struct UnitInterval {
  ChainComplex complex;
  ChainMap i0, i1;  // S → I
  ChainMap pi;      // I → S
  ChainMap H;       // I⊗I → I
};

/// Throws ValidationError naming the first identity that fails.
void validate_interval(const UnitInterval& i);
bool is_unit_interval(const UnitInterval& i);

/// [0], [1] in degree 0, e in degree 1 with d e = [1] − [0], H by the min-rule.
UnitInterval standard_interval(std::uint32_t p);
/// The automorphism of the standard interval exchanging the endpoints.
ChainMap standard_flip(std::uint32_t p);

/// A left homotopy a⊗I → y from map(1⊗i0) to map(1⊗i1).
struct IntervalHomotopy {
  ChainComplex source;  // a
  UnitInterval interval;
  ChainMap map;

  ChainMap start() const;
  ChainMap end() const;
};

IntervalHomotopy constant_homotopy(const ChainMap& f, const UnitInterval& i);
/// The interval form of a chain homotopy h : from ⇒ to over the standard
/// interval: x⊗[0] ↦ from(x), x⊗[1] ↦ to(x), x⊗e ↦ (−1)^{|x|} h(x).
IntervalHomotopy interval_form(const ChainHomotopy& h);
/// Glue a homotopy u ⇒ v over I with v ⇒ w over I′ into u ⇒ w over the
/// amalgamated interval.
IntervalHomotopy concatenate(const IntervalHomotopy& first, const IntervalHomotopy& second);

/// I ∪ I′ glued along i1 of I and i0 of I′.
UnitInterval amalgamate(const UnitInterval& first, const UnitInterval& second);

/// The cyclic permutation a⊗b⊗c ↦ (−1)^{|c|(|a|+|b|)} c⊗a⊗b of k^{⊗3}.
ChainMap cyclic_permutation(const ChainComplex& k);

/// A homotopy k^{⊗3}⊗I → k^{⊗3} from the cyclic permutation to the identity.
struct SymmetryCertificate {
  ChainComplex k;
  UnitInterval interval;
  ChainMap homotopy;
};
std::optional<SymmetryCertificate> certify_symmetric(const ChainComplex& k);

/// A square  a --f--> x
///           |r       |s
///           b --g--> y   commuting up to a left homotopy g∘r ⇒ s∘f.
struct HomotopySquare {
  ChainMap f, r, s, g;
};

struct CylinderSquare {
  ChainComplex b_prime;          // b ∐_a (a⊗I)
  ChainMap q;                    // b′ → b, a quasi-isomorphism
  ChainMap r_prime;              // a → b′ with q∘r′ = r
  ChainMap g_prime;              // b′ → y with g′∘r′ = s∘f
  IntervalHomotopy h_prime;      // g∘q ⇒ g′
};
CylinderSquare mapping_cylinder_square(const HomotopySquare& sq, const IntervalHomotopy& h);

struct Rectification {
  Spectrum c;  // truncated at the requested top level
  SpectrumMap h;  // c → a, a levelwise quasi-isomorphism
  SpectrumMap g;  // c → b
  std::vector<IntervalHomotopy> homotopies;  // f_n∘h_n ⇒ g_n
};

/// Replace levelwise maps f_n : a_n → b_n, whose squares commute up to the
/// homotopies H_n : f_{n+1}∘σ ⇒ σ∘(f_n⊗K) on (a_n⊗K)⊗I, by a strict map out of
/// a level-equivalent spectrum, through level `top`.
Rectification rectify_spectrum_map(const Spectrum& a, const Spectrum& b,
                                   const std::vector<ChainMap>& f,
                                   const std::vector<IntervalHomotopy>& H, int top);

struct TensoringComparison {
  Spectrum no_twist;  // X⊗̄K⊗̄K
  Spectrum twist;     // X⊗K⊗K
  Rectification rect;
  /// Both legs FX → X⊗̄K⊗̄K and FX → X⊗K⊗K are quasi-isomorphisms at every level.
  bool level_equivalences = false;
};
TensoringComparison compare_tensorings(const Spectrum& x, const SymmetryCertificate& cert,
                                       int top = 3);

}  // namespace stab
