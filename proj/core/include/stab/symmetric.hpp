#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "stab/chain.hpp"
#include "stab/spectra.hpp"

namespace stab {

// -- permutations -----------------------------------------------------------

/// A permutation of {0..n-1}; g[i] is the image of i.
using Perm = std::vector<int>;

Perm perm_identity(int n);
/// a∘b.
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& g);
/// The adjacent transposition s_i swapping i and i+1.
Perm perm_transposition(int n, int i);
/// a × b acting on {0..|a|-1} and {|a|..|a|+|b|-1}.
Perm perm_block_sum(const Perm& a, const Perm& b);
/// All permutations of {0..n-1} in lexicographic order.
std::vector<Perm> all_perms(int n);
/// Position of g in lexicographic order.
std::size_t perm_rank(const Perm& g);
int perm_inversions(const Perm& g);
/// Indices w with g = s_{w[k-1]} ∘ ... ∘ s_{w[0]} (bubble-sort reduced word).
std::vector<int> reduced_word(const Perm& g);
/// The p-element subsets of {0..n-1}, each sorted, in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int p);
/// The shuffle sending 0..p-1 onto `subset` and p..n-1 onto its complement,
/// both in increasing order.
Perm shuffle_perm(int n, const std::vector<int>& subset);

/// Left-nested tensor product of a list of complexes (S for an empty list).
ChainComplex tensor_all(const std::vector<ChainComplex>& factors);
/// Move the factor in position i of a left-nested tensor product to position
/// g(i), with the Koszul sign of the crossings.
ChainMap permute_factors(const std::vector<ChainComplex>& factors, const Perm& g);

// -- representations --------------------------------------------------------

/// A complex with a Σ_n action, given by the actions of s_0..s_{n-2}.
class SymRep {
 public:
  SymRep() = default;
  SymRep(int n, ChainComplex space, std::vector<ChainMap> gens);
  /// The trivial action.
  static SymRep trivial(int n, const ChainComplex& space);

  int arity() const { return n_; }
  const ChainComplex& space() const { return space_; }
  const ChainMap& gen(int i) const { return gens_[static_cast<std::size_t>(i)]; }
  const std::vector<ChainMap>& gens() const { return gens_; }
  /// The action of an arbitrary permutation, through its reduced word.
  ChainMap act(const Perm& g) const;

  bool operator==(const SymRep& o) const;
  bool operator!=(const SymRep& o) const { return !(*this == o); }

 private:
  int n_ = 0;
  ChainComplex space_;
  std::vector<ChainMap> gens_;
};

/// A symmetric sequence stored through a finite horizon: entry n has arity n.
using SymSeq = std::vector<SymRep>;

/// Equivariance of a chain map between two representations of the same arity.
bool is_equivariant(const ChainMap& f, const SymRep& source, const SymRep& target);
/// Every degree of the complex is a projective F_p[Σ_n]-module.
bool is_degreewise_projective(const SymRep& r);

// -- symmetric spectra ------------------------------------------------------

/// A symmetric spectrum stored through levels 0..H (the horizon), with
/// Σ_n-equivariant structure maps σ_n : X_n ⊗ K → X_{n+1} adding letter n.
/// K must be one-dimensional.
class SymmetricSpectrum {
 public:
  SymmetricSpectrum() = default;
  SymmetricSpectrum(ChainComplex k, std::vector<SymRep> levels, std::vector<ChainMap> sigmas);
  static SymmetricSpectrum zero(const ChainComplex& k, int horizon);

  const ChainComplex& K() const { return k_; }
  std::uint32_t prime() const { return k_.prime(); }
  int suspension_degree() const { return k_.top(); }
  int horizon() const { return static_cast<int>(levels_.size()) - 1; }
  const SymRep& level(int n) const;
  const ChainComplex& space(int n) const { return level(n).space(); }
  const std::vector<SymRep>& levels() const { return levels_; }
  const ChainMap& sigma(int n) const;
  /// X_m ⊗ K^{⊗r} → X_{m+r}, left-nested.
  ChainMap iterated_sigma(int m, int r) const;
  ChainMap sigma_adjoint(int n) const;
  /// The same spectrum cut down to a smaller horizon.
  SymmetricSpectrum truncate(int horizon) const;

  bool operator==(const SymmetricSpectrum& o) const;
  bool operator!=(const SymmetricSpectrum& o) const { return !(*this == o); }

 private:
  void validate() const;

  ChainComplex k_;
  std::vector<SymRep> levels_;
  std::vector<ChainMap> sigmas_;
};

/// A map of symmetric spectra through the smaller of the two horizons.
class SymMap {
 public:
  SymMap() = default;
  SymMap(SymmetricSpectrum source, SymmetricSpectrum target, std::vector<ChainMap> comps);
  static SymMap identity(const SymmetricSpectrum& x);
  static SymMap zero(const SymmetricSpectrum& s, const SymmetricSpectrum& t);

  const SymmetricSpectrum& source() const { return source_; }
  const SymmetricSpectrum& target() const { return target_; }
  int horizon() const { return static_cast<int>(comps_.size()) - 1; }
  const ChainMap& comp(int n) const;
  const std::vector<ChainMap>& comps() const { return comps_; }

  SymMap operator*(const SymMap& f) const;  // this ∘ f
  SymMap operator+(const SymMap& o) const;
  SymMap operator-(const SymMap& o) const;
  SymMap scaled(long long c) const;
  bool operator==(const SymMap& o) const;
  bool operator!=(const SymMap& o) const { return !(*this == o); }
  bool is_level_iso() const;

 private:
  SymmetricSpectrum source_, target_;
  std::vector<ChainMap> comps_;
};

/// Sym(K): K^{⊗n} at level n with the Koszul permutation action.
SymmetricSpectrum sym_K(const ChainComplex& k, int horizon);
/// The ideal of Sym(K): zero at level 0, K^{⊗n} above.
SymmetricSpectrum sym_K_bar(const ChainComplex& k, int horizon);

// -- the tensor product of symmetric sequences ------------------------------

/// (X⊗Y)_n = ⊕_{p+q=n} ⊕_{(p,q)-shuffles} X_p ⊗ Y_q, blocks ordered by p and
/// then by the lexicographic order of the subset receiving the X letters.
class SeqTensor {
 public:
  struct Block {
    int p = 0;
    std::vector<int> subset;
  };

  SeqTensor(SymSeq x, SymSeq y);

  int horizon() const { return static_cast<int>(value_.size()) - 1; }
  const SymSeq& value() const { return value_; }
  const SymRep& level(int n) const { return value_[static_cast<std::size_t>(n)]; }
  const std::vector<Block>& blocks(int n) const { return blocks_[static_cast<std::size_t>(n)]; }
  std::size_t find_block(int n, int p, const std::vector<int>& subset) const;
  /// The first block with X in arity p (X letters in positions 0..p-1).
  std::size_t front_block(int n, int p) const;
  ChainComplex part(int n, std::size_t b) const;
  ChainMap inclusion(int n, std::size_t b) const;
  ChainMap projection(int n, std::size_t b) const;
  /// The equivariant extension (X⊗Y)_n → z of maps φ(p,q) : X_p⊗Y_q → z
  /// that are Σ_p × Σ_q-equivariant.
  ChainMap induced(int n, const SymRep& z, const std::function<ChainMap(int, int)>& phi) const;
  /// The blockwise map into a tensor with the same block layout.
  ChainMap blockwise(int n, const SeqTensor& target,
                     const std::function<ChainMap(int, int)>& f) const;
  /// Right Sym(K)-module structure when Y is a symmetric spectrum.
  ChainMap right_structure(int n, const SymmetricSpectrum& y) const;

 private:
  SymSeq x_, y_, value_;
  std::vector<std::vector<Block>> blocks_;
};

SymSeq sequence_of(const SymmetricSpectrum& x);

// -- smash product ----------------------------------------------------------

struct SymSmash {
  SymmetricSpectrum value;
  std::vector<ChainMap> projections;  // (X⊗Y)_n → (X∧Y)_n
};
/// X ∧ Y = X ⊗_{Sym(K)} Y, levelwise the cokernel of the two actions.
SymSmash smash_data(const SymmetricSpectrum& x, const SymmetricSpectrum& y);
SymmetricSpectrum smash(const SymmetricSpectrum& x, const SymmetricSpectrum& y);
SymMap smash_map(const SymMap& f, const SymMap& g);
/// The canonical map Sym(K) ∧ X → X.
SymMap smash_unit_map(const SymmetricSpectrum& x);
/// The left action K^{⊗r} ⊗ Y_q → Y_{r+q} of Sym(K), letters of K first.
ChainMap left_action(const SymmetricSpectrum& y, int r, int q);

// -- free, evaluation, cofree -----------------------------------------------

/// Σ_n × a with the left translation action (copies in lexicographic order).
SymRep induced_free(int n, const ChainComplex& a);
SymmetricSpectrum free_sym(int n, const ChainComplex& a, const ChainComplex& k, int horizon);
const SymRep& eval_sym(int n, const SymmetricSpectrum& x);
/// The unit a → Ev_n F_n a onto the copy of the identity permutation.
ChainMap free_sym_unit(int n, const ChainComplex& a);
SymMap free_sym_extension(int n, const ChainMap& phi, const SymmetricSpectrum& x);
SymMap free_sym_map(int n, const ChainMap& f, const ChainComplex& k, int horizon);

/// R_n a: at level m ≤ n the Σ_{n−m}-fixed part of Hom(K^{⊗(n−m)}, Map(Σ_n, a)).
SymmetricSpectrum cofree_sym(int n, const ChainComplex& a, const ChainComplex& k, int horizon);
/// Evaluation at the identity permutation, Ev_n R_n a → a.
ChainMap cofree_sym_counit(int n, const ChainComplex& a);
SymMap cofree_sym_extension(int n, const ChainMap& psi, const SymmetricSpectrum& x);
SymMap cofree_sym_map(int n, const ChainMap& f, const ChainComplex& k, int horizon);

/// F_{n+m}(a⊗b) → F_n a ∧ F_m b adjoint to x⊗y ↦ [(e,x)⊗(e,y)].
SymMap free_smash_comparison(int n, const ChainComplex& a, int m, const ChainComplex& b,
                             const ChainComplex& k, int horizon);

// -- latching and cofibrations ----------------------------------------------

struct Latching {
  SymRep object;
  ChainMap map;  // L_n X → X_n
};
Latching latching(int n, const SymmetricSpectrum& x);

struct SymCorner {
  SymRep pushout;   // X_n ∐_{L_n X} L_n Y
  ChainMap corner;  // → Y_n
  SymRep cokernel;
};
SymCorner sym_corner(int n, const SymMap& f);
/// Each corner map is injective with degreewise projective cokernel.
bool is_sym_cofibration(const SymMap& f);

// -- shifts -----------------------------------------------------------------

/// (sX)_n = X_{n+1}, with Σ_n acting on the last n letters.
SymmetricSpectrum shift_s_sym(const SymmetricSpectrum& x);
SymMap shift_s_sym(const SymMap& f);
/// (tX)_n = Σ_n ×_{Σ_{n−1}} X_{n−1}, cosets r_j with r_j(0) = j.
SymmetricSpectrum shift_t_sym(const SymmetricSpectrum& x);
SymMap shift_t_sym(const SymMap& f);
SymMap shift_sym_unit(const SymmetricSpectrum& x);    // X → s t X
SymMap shift_sym_counit(const SymmetricSpectrum& x);  // t s X → X

struct SymAdjunctionSample {
  int n = 0;
  ChainComplex a;
  SymmetricSpectrum x;
};
AdjunctionReport sym_adjunction_check(AdjunctionKind kind,
                                      const std::vector<SymAdjunctionSample>& samples);

// -- stable notions ---------------------------------------------------------

bool is_omega_spectrum(const SymmetricSpectrum& x, int max_level);
/// s_n^a : F_{n+1}(a⊗K) → F_n a.
SymMap sym_map_s_n(int n, const ChainComplex& a, const ChainComplex& k, int horizon);
/// The naive colimit colim_n H_{k+n|K|}(X_n), checked between the last two
/// stored levels. Diagnostic only: it does not detect stable equivalences.
StablePi naive_pi(const SymmetricSpectrum& x, int k);

// -- constructions ----------------------------------------------------------

struct SymPushout {
  SymmetricSpectrum value;
  SymMap from_b, from_c;
};
SymPushout pushout_sym(const SymMap& f, const SymMap& g);

/// Levelwise Φ with structure maps Φ(σ_n)∘τ; τ is checked for naturality.
SymmetricSpectrum apply_functor_levelwise(const BaseFunctor& phi, const SymmetricSpectrum& x);
/// The functor −⊗a with its twist comparison.
BaseFunctor tensor_functor(const ChainComplex& a, const ChainComplex& k);
SymmetricSpectrum tensor_with(const SymmetricSpectrum& x, const ChainComplex& a);
SymMap tensor_with(const SymMap& f, const ChainComplex& a);

/// The corner map of f □ g for chain maps.
ChainMap pushout_product(const ChainMap& f, const ChainMap& g);
/// The corner map of f □ g for f a map of symmetric spectra and g a chain map.
SymMap pushout_product(const SymMap& f, const ChainMap& g);

/// A diagonal in a square of maps of symmetric spectra, if one exists.
std::optional<SymMap> has_lift_sym(const SymMap& i, const SymMap& p, const SymMap& f,
                                   const SymMap& g);

/// A small symmetric spectrum drawn from free, cofree and shifted families.
SymmetricSpectrum random_sym_spectrum(const ChainComplex& k, std::mt19937_64& rng, int horizon,
                                      const RandomSizes& sizes = {2, 2});

}  // namespace stab
