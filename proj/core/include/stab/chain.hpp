#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stab/linalg.hpp"

namespace stab {

/// A bounded, finite-type, non-negatively graded chain complex over F_p.
/// Differentials are stored as matrices d_n : C_n -> C_{n-1} acting on
/// column vectors. Trailing zero degrees are trimmed; d∘d = 0 is validated.
class ChainComplex {
 public:
  ChainComplex() : p_(2) {}
  /// `diffs` holds d_1..d_top (size dims.size()-1), or d_0..d_top with an
  /// empty d_0 (size dims.size()).
  ChainComplex(std::uint32_t p, std::vector<std::size_t> dims,
               std::vector<Matrix> diffs);

  /// Skips the d∘d = 0 check; only for complexes built from valid ones
  /// (tensor products).
  static ChainComplex trusted(std::uint32_t p, std::vector<std::size_t> dims,
                              std::vector<Matrix> diffs);
  static ChainComplex zero(std::uint32_t p) { return ChainComplex(p, {}, {}); }
  /// The unit S: one generator in degree 0.
  static ChainComplex unit(std::uint32_t p);
  /// F_p concentrated in degree d.
  static ChainComplex sphere(std::uint32_t p, int d);
  /// Two generators in degrees d and d-1 joined by the identity (d >= 1).
  static ChainComplex disk(std::uint32_t p, int d);
  /// Two vertices [0], [1] and an edge e with d e = [1] - [0].
  static ChainComplex interval(std::uint32_t p);

  std::uint32_t prime() const { return p_; }
  /// Highest nonzero degree, or -1 for the zero complex.
  int top() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int n) const {
    return (n < 0 || n > top()) ? 0 : dims_[static_cast<std::size_t>(n)];
  }
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// d_n : C_n -> C_{n-1}, a dim(n-1) x dim(n) matrix (zero-sized outside).
  Matrix diff(int n) const;
  std::size_t total_dim() const;
  bool is_zero() const { return dims_.empty(); }
  /// Lowest nonzero degree (0 for the zero complex).
  int bottom() const;

  bool operator==(const ChainComplex& o) const;
  bool operator!=(const ChainComplex& o) const { return !(*this == o); }
  std::string describe() const;

 private:
  ChainComplex(std::uint32_t p, std::vector<std::size_t> dims, std::vector<Matrix> diffs, bool check);

  std::uint32_t p_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;  // diffs_[n] = d_n, diffs_[0] empty
};

/// A degree-zero chain map. Components are stored for degrees
/// 0..max(top(source), top(target)).
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> mats);

  /// Skips the f∘d = d∘f check; only for maps that are chain maps by
  /// construction (composites, sums, tensor products).
  static ChainMap trusted(ChainComplex source, ChainComplex target, std::vector<Matrix> mats);
  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(const ChainComplex& s, const ChainComplex& t);
  static ChainMap scalar(const ChainComplex& c, long long k);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  std::uint32_t prime() const { return source_.prime(); }
  /// f_n : source_n -> target_n (zero-sized outside the stored range).
  Matrix mat(int n) const;
  int top() const { return static_cast<int>(mats_.size()) - 1; }

  ChainMap operator*(const ChainMap& f) const;  // composition this∘f
  ChainMap operator+(const ChainMap& o) const;
  ChainMap operator-(const ChainMap& o) const;
  ChainMap operator-() const { return scaled(-1); }
  ChainMap scaled(long long k) const;
  bool operator==(const ChainMap& o) const;
  bool operator!=(const ChainMap& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_identity() const;

 private:
  ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> mats, bool check);

  ChainComplex source_, target_;
  std::vector<Matrix> mats_;
};

/// Components h_n : source_n -> target_{n+1} with d h + h d = to - from.
struct ChainHomotopy {
  ChainMap from, to;
  std::vector<Matrix> comps;

  Matrix comp(int n) const;
  /// Re-check the defining identity exactly.
  bool valid() const;
};

ChainHomotopy make_homotopy(ChainMap from, ChainMap to, std::vector<Matrix> comps);

// -- homology and classification -------------------------------------------

std::size_t homology(const ChainComplex& x, int k);
std::vector<std::size_t> homology_dims(const ChainComplex& x, int max_degree);
/// Rank of the map induced on H_k.
std::size_t induced_rank(const ChainMap& f, int k);
bool is_quasi_iso(const ChainMap& f);
/// Quasi-isomorphism test restricted to homological degrees <= max_degree.
bool is_quasi_iso_upto(const ChainMap& f, int max_degree);
bool is_injective(const ChainMap& f);
/// Surjective in every degree >= from_degree.
bool is_surjective(const ChainMap& f, int from_degree = 0);
bool is_iso(const ChainMap& f);
ChainMap inverse(const ChainMap& f);

struct MapClass {
  bool cofibration = false;
  bool fibration = false;
  bool weak_equivalence = false;
};
MapClass classify_map(const ChainMap& f);

// -- tensor structure -------------------------------------------------------

/// Offsets of the (p, q) blocks of (a ⊗ b)_n, ordered by p.
class TensorIndex {
 public:
  TensorIndex(const ChainComplex& a, const ChainComplex& b);
  std::size_t offset(int n, int p) const;
  std::size_t index(int n, int p, std::size_t i, std::size_t j) const {
    return offset(n, p) + i * b_.dim(n - p) + j;
  }
  std::size_t dim(int n) const;
  int top() const { return a_.top() + b_.top(); }

 private:
  ChainComplex a_, b_;
  std::vector<std::vector<std::size_t>> offsets_;  // [n][p]
  std::vector<std::size_t> dims_;
};

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);
/// (f ⊗ g)(x ⊗ y) = f(x) ⊗ g(y) for degree-zero maps.
ChainMap tensor(const ChainMap& f, const ChainMap& g);
/// x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x.
ChainMap twist(const ChainComplex& a, const ChainComplex& b);
/// (a ⊗ b) ⊗ c -> a ⊗ (b ⊗ c); a signless permutation.
ChainMap associator(const ChainComplex& a, const ChainComplex& b,
                    const ChainComplex& c);
ChainMap associator_inverse(const ChainComplex& a, const ChainComplex& b,
                            const ChainComplex& c);
/// K^{⊗n}, nested to the left; K^{⊗0} = S.
ChainComplex tensor_power(const ChainComplex& k, int n);

// -- sums, kernels, cokernels -----------------------------------------------

struct DirectSum {
  ChainComplex sum;
  ChainMap in_a, in_b, pr_a, pr_b;
};
DirectSum direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainComplex direct_sum_of(const std::vector<ChainComplex>& parts);
/// (f, g) : a ⊕ b -> c.
ChainMap copair(const DirectSum& s, const ChainMap& f, const ChainMap& g);
/// (f, g) : c -> a ⊕ b.
ChainMap pair(const DirectSum& s, const ChainMap& f, const ChainMap& g);

struct Quotient {
  ChainComplex complex;
  ChainMap projection;  // surjective
};
struct Sub {
  ChainComplex complex;
  ChainMap inclusion;  // injective
};

Quotient cokernel(const ChainMap& f);
Sub kernel(const ChainMap& f);
/// The subcomplex spanned, degree by degree, by the columns of `bases[n]`
/// (which must be linearly independent and closed under d).
Sub subcomplex(const ChainComplex& c, const std::vector<Matrix>& bases);
/// The unique X with X∘proj = m, when proj is surjective and m kills ker proj.
ChainMap factor_through_surjection(const ChainMap& m, const ChainMap& proj);
/// The unique X with incl∘X = m, when incl is injective and contains im m.
ChainMap factor_through_injection(const ChainMap& m, const ChainMap& incl);

struct Pushout {
  ChainComplex complex;
  ChainMap from_b, from_c;
};
Pushout pushout(const ChainMap& f, const ChainMap& g);
/// The map out of a pushout determined by u : b -> z and v : c -> z.
ChainMap induced_from_pushout(const Pushout& po, const ChainMap& u,
                              const ChainMap& v);

struct Pullback {
  ChainComplex complex;
  ChainMap to_b, to_c;
};
Pullback pullback(const ChainMap& f, const ChainMap& g);
ChainMap induced_to_pullback(const Pullback& pb, const ChainMap& u,
                             const ChainMap& v);

Quotient coequalizer(const ChainMap& f, const ChainMap& g);

// -- the right adjoint U of −⊗K ---------------------------------------------

/// Dimension of Hom_n(k, x) = ⊕_m Hom(k_m, x_{m+n}), and block offsets.
std::size_t hom_dim(const ChainComplex& k, const ChainComplex& x, int n);
std::size_t hom_offset(const ChainComplex& k, const ChainComplex& x, int n, int m);
/// Df = d∘f − (−1)^n f∘d on Hom_n.
Matrix hom_diff(const ChainComplex& k, const ChainComplex& x, int n);

/// Good truncation of the internal hom, with the degree-0 cycle inclusion.
struct LoopsData {
  ChainComplex complex;
  Matrix cycles0;       // Hom_0 coordinates of the degree-0 basis
  Matrix cycles0_left;  // left inverse of cycles0
};
LoopsData loops_data(const ChainComplex& x, const ChainComplex& k);
ChainComplex loops_U(const ChainComplex& x, const ChainComplex& k);
/// U on maps: f ↦ f∘−.
ChainMap loops_U(const ChainMap& f, const ChainComplex& k);

/// φ : a⊗k → x  ↦  φ♭ : a → U(x).
ChainMap adjoint_GU(const ChainMap& phi, const ChainComplex& a,
                    const ChainComplex& k);
/// ψ : a → U(x)  ↦  ψ♯ : a⊗k → x.
ChainMap adjoint_UG(const ChainMap& psi, const ChainComplex& x,
                    const ChainComplex& k);
/// η_a : a → U(a⊗k).
ChainMap unit_GU(const ChainComplex& a, const ChainComplex& k);
/// ε_x : U(x)⊗k → x.
ChainMap counit_GU(const ChainComplex& x, const ChainComplex& k);

// -- lifting ----------------------------------------------------------------

/// A diagonal h : b → x with h∘i = f, p∘h = g, if one exists.
std::optional<ChainMap> has_lift(const ChainMap& i, const ChainMap& p,
                                 const ChainMap& f, const ChainMap& g);
/// A chain homotopy from f to g, if one exists.
std::optional<ChainHomotopy> find_homotopy(const ChainMap& f, const ChainMap& g);

// -- random generation ------------------------------------------------------

struct RandomSizes {
  int max_degree = 4;
  std::size_t max_dim = 3;
};
ChainComplex random_complex(std::uint32_t p, std::mt19937_64& rng,
                            const RandomSizes& sizes = {});
/// A uniformly random chain map between the given complexes.
ChainMap random_chain_map(const ChainComplex& a, const ChainComplex& b,
                          std::mt19937_64& rng);
/// The affine space of chain maps a → b as a linear system solution space.
LinearSystem::SolutionSpace chain_map_space(const ChainComplex& a,
                                            const ChainComplex& b);

}  // namespace stab
