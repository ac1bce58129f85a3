#pragma once

#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "stab/chain.hpp"

namespace stab {

/// Raised when a sequential colimit fails its one-extra-stage check.
class UnstableColimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A spectrum X_0, X_1, ... with structure maps σ_n : X_n ⊗ K → X_{n+1}.
///
/// K must be one-dimensional (F_p concentrated in a single degree). Finite
/// data is stored for levels 0..N; beyond the tail index N the spectrum is
/// a suspension: X_{n+1} = X_n ⊗ K with σ_n = c · identity, where c is the
/// tail scalar (1 for the plain tail rule). A truncated spectrum carries
/// levels 0..N only and refuses to be evaluated past N.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(ChainComplex k, std::vector<ChainComplex> levels,
           std::vector<ChainMap> sigmas, long long tail_scalar = 1);
  static Spectrum truncated(ChainComplex k, std::vector<ChainComplex> levels,
                            std::vector<ChainMap> sigmas);
  /// Build from levels 0..T+1 and maps 0..T, checking that σ_T is a scalar
  /// identity onto X_T ⊗ K so that T is a valid tail index.
  static Spectrum from_prefix(ChainComplex k, std::vector<ChainComplex> levels,
                              std::vector<ChainMap> sigmas);
  static Spectrum zero(const ChainComplex& k);

  const ChainComplex& K() const { return k_; }
  std::uint32_t prime() const { return k_.prime(); }
  /// Degree of the generator of K.
  int suspension_degree() const { return k_.top(); }
  int tail_index() const { return static_cast<int>(levels_.size()) - 1; }
  bool is_truncated() const { return truncated_; }
  Scalar tail_scalar() const { return tail_scalar_; }
  /// Highest level that may be evaluated (unbounded unless truncated).
  bool has_level(int n) const { return n >= 0 && (!truncated_ || n <= tail_index()); }

  ChainComplex level(int n) const;
  /// σ_n : X_n ⊗ K → X_{n+1}.
  ChainMap sigma(int n) const;
  /// The adjoint X_n → U(X_{n+1}) of σ_n.
  ChainMap sigma_adjoint(int n) const;
  /// The iterated structure map X_m ⊗ K^{⊗r} → X_{m+r} (left-nested tensor).
  ChainMap iterated_sigma(int m, int r) const;

  const std::vector<ChainComplex>& stored_levels() const { return levels_; }
  const std::vector<ChainMap>& stored_sigmas() const { return sigmas_; }

  bool operator==(const Spectrum& o) const;
  bool operator!=(const Spectrum& o) const { return !(*this == o); }

 private:
  void validate() const;

  ChainComplex k_;
  std::vector<ChainComplex> levels_;
  std::vector<ChainMap> sigmas_;
  Scalar tail_scalar_ = 1;
  bool truncated_ = false;
};

/// A map of spectra. Components are stored up to the larger tail index and
/// extended beyond it by f_{n+1} = (c_target / c_source) · (f_n ⊗ K).
class SpectrumMap {
 public:
  SpectrumMap() = default;
  SpectrumMap(Spectrum source, Spectrum target, std::vector<ChainMap> comps);

  static SpectrumMap identity(const Spectrum& x);
  static SpectrumMap zero(const Spectrum& s, const Spectrum& t);

  const Spectrum& source() const { return source_; }
  const Spectrum& target() const { return target_; }
  /// Number of stored components minus one.
  int stored_top() const { return static_cast<int>(comps_.size()) - 1; }
  ChainMap comp(int n) const;
  const std::vector<ChainMap>& stored_comps() const { return comps_; }

  SpectrumMap operator*(const SpectrumMap& f) const;  // this ∘ f
  SpectrumMap operator+(const SpectrumMap& o) const;
  SpectrumMap operator-(const SpectrumMap& o) const;
  SpectrumMap scaled(long long c) const;
  bool operator==(const SpectrumMap& o) const;
  bool operator!=(const SpectrumMap& o) const { return !(*this == o); }

 private:
  Spectrum source_, target_;
  std::vector<ChainMap> comps_;
};

/// Number of levels on which two spectra must be compared to decide
/// equality of maps between them (one past both tails).
int comparison_horizon(const Spectrum& a, const Spectrum& b);

// -- free, evaluation, cofree -----------------------------------------------

/// F_n a: zero below n, a ⊗ K^{⊗(m−n)} at level m ≥ n.
Spectrum free_spectrum(int n, const ChainComplex& a, const ChainComplex& k);
ChainComplex eval(int n, const Spectrum& x);
/// R_n a: U^{n−m} a at level m ≤ n and zero above; structure maps are counits.
Spectrum cofree(int n, const ChainComplex& a, const ChainComplex& k);

/// The map F_n a → X adjoint to φ : a → X_n.
SpectrumMap free_extension(int n, const ChainMap& phi, const Spectrum& x);
/// The map X → R_n a adjoint to ψ : X_n → a.
SpectrumMap cofree_extension(int n, const ChainMap& psi, const Spectrum& x);
/// F_n on maps and R_n on maps.
SpectrumMap free_map(int n, const ChainMap& f, const ChainComplex& k);
SpectrumMap cofree_map(int n, const ChainMap& f, const ChainComplex& k);

enum class AdjunctionKind { FreeEval, EvalCofree, ShiftTS };

struct AdjunctionSample {
  int n = 0;
  ChainComplex a;  // used by the free/cofree adjunctions
  Spectrum x;
};

struct AdjunctionReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Verify both triangle identities of the chosen adjunction on each sample.
AdjunctionReport adjunction_check(AdjunctionKind kind,
                                  const std::vector<AdjunctionSample>& samples);

// -- prolongations and shifts -----------------------------------------------

/// X ⊗̄ K: level n is X_n ⊗ K, structure maps σ_n ⊗ K.
Spectrum prolong_G_no_twist(const Spectrum& x);
SpectrumMap prolong_G_no_twist(const SpectrumMap& f);
/// X ⊗ K: level n is X_n ⊗ K, structure map (σ_n ⊗ K)∘(X_n ⊗ twist(K,K)).
Spectrum tensor_K_twist(const Spectrum& x);
/// U applied levelwise, with structure maps U(σ_n)∘η∘ε.
Spectrum prolong_U(const Spectrum& x);
SpectrumMap prolong_U(const SpectrumMap& f);
/// (sX)_n = X_{n+1}.
Spectrum shift_s(const Spectrum& x);
SpectrumMap shift_s(const SpectrumMap& f);
/// (tX)_0 = 0, (tX)_n = X_{n−1}.
Spectrum shift_t(const Spectrum& x);
SpectrumMap shift_t(const SpectrumMap& f);
/// Unit X → s t X and counit t s X → X.
SpectrumMap shift_unit(const Spectrum& x);
SpectrumMap shift_counit(const Spectrum& x);

/// A functor on the base category together with τ_A : F(A)⊗K → F(A⊗K).
struct BaseFunctor {
  std::function<ChainComplex(const ChainComplex&)> on_object;
  std::function<ChainMap(const ChainMap&)> on_map;
  std::function<ChainMap(const ChainComplex&)> tau;
};
/// Levelwise F with structure maps F(σ_n)∘τ, computed through `horizon`.
/// Naturality of τ is checked against each structure map.
Spectrum prolong_functor(const BaseFunctor& f, const Spectrum& x, int horizon);

// -- stabilization ----------------------------------------------------------

struct RResult {
  Spectrum value;
  SpectrumMap iota;  // X → RX
};
/// R = sU together with ι_X, levelwise the adjoint structure maps.
RResult R_once(const Spectrum& x);
SpectrumMap R_map(const SpectrumMap& f);

struct RInfinity {
  Spectrum value;
  SpectrumMap j;   // X → R^∞X
  int stage = 0;   // number of applications of R used
};
/// R^∞X, realized as R^M X once the colimit has stabilized; the stage is
/// verified by checking that the next ι is an isomorphism.
RInfinity R_infinity(const Spectrum& x, int min_stage = 0);
/// R^∞ on a map, computed at a common stage for source and target.
SpectrumMap R_infinity_map(const SpectrumMap& f, int min_stage = 0);

struct ProbeGrid {
  int max_level = 4;
  int max_degree = 5;
};

bool is_U_spectrum(const Spectrum& x, int max_level);
bool is_level_equivalence(const SpectrumMap& f, const ProbeGrid& grid);
bool is_level_fibration(const SpectrumMap& f, int max_level);

struct StablePi {
  std::size_t value = 0;
  int stage = 0;
};
/// π_k X = colim_n H_{k + n·|K|}(X_n), with the stage checked.
StablePi stable_pi(const Spectrum& x, int k);

bool is_stable_equivalence(const SpectrumMap& f, const ProbeGrid& grid);
bool is_projective_cofibration(const SpectrumMap& f);
bool is_stable_fibration(const SpectrumMap& f, const ProbeGrid& grid);

/// Levelwise pullback of spectra.
struct SpectrumPullback {
  Spectrum value;
  SpectrumMap to_b, to_c;
};
SpectrumPullback pullback(const SpectrumMap& f, const SpectrumMap& g);

/// The map s_n^A : F_{n+1}(A⊗K) → F_n A adjoint to the identity of A⊗K.
SpectrumMap s_map(int n, const ChainComplex& a, const ChainComplex& k);

/// A diagonal in a square of spectrum maps (i : A → B, p : X → Y,
/// f : A → X, g : B → Y), solved over all levels at once.
std::optional<SpectrumMap> has_lift(const SpectrumMap& i, const SpectrumMap& p,
                                    const SpectrumMap& f, const SpectrumMap& g);

// -- random generation ------------------------------------------------------

struct SpectrumSizes {
  RandomSizes complex{3, 2};
  int max_tail = 3;
};
Spectrum random_spectrum(const ChainComplex& k, std::mt19937_64& rng,
                         const SpectrumSizes& sizes = {});
SpectrumMap random_spectrum_map(const Spectrum& x, const Spectrum& y,
                                std::mt19937_64& rng);

}  // namespace stab
