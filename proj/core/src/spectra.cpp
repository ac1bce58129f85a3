#include "stab/spectra.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace stab {

namespace {

void require_suspension_object(const ChainComplex& k) {
  if (k.total_dim() != 1) {
    throw std::invalid_argument(
        "spectra require K to be one-dimensional (F_p in a single degree), got dims " +
        k.describe());
  }
}

ChainMap shifted_by_K(const ChainMap& f, const ChainComplex& k, Scalar c) {
  return tensor(f, ChainMap::identity(k)).scaled(c);
}

// Levels 0..count-1 of a levelwise construction, finished as a truncated
// spectrum or via the tail check.
Spectrum assemble(const ChainComplex& k, bool truncated, std::vector<ChainComplex> levels,
                  std::vector<ChainMap> sigmas) {
  if (truncated) return Spectrum::truncated(k, std::move(levels), std::move(sigmas));
  return Spectrum::from_prefix(k, std::move(levels), std::move(sigmas));
}

}  // namespace

// -- Spectrum ---------------------------------------------------------------

Spectrum::Spectrum(ChainComplex k, std::vector<ChainComplex> levels, std::vector<ChainMap> sigmas,
                   long long tail_scalar)
    : k_(std::move(k)), levels_(std::move(levels)), sigmas_(std::move(sigmas)) {
  require_suspension_object(k_);
  tail_scalar_ = Field(k_.prime()).reduce(tail_scalar);
  if (tail_scalar_ == 0) throw std::invalid_argument("tail scalar must be nonzero");
  validate();
}

Spectrum Spectrum::truncated(ChainComplex k, std::vector<ChainComplex> levels,
                             std::vector<ChainMap> sigmas) {
  Spectrum s;
  s.k_ = std::move(k);
  require_suspension_object(s.k_);
  s.levels_ = std::move(levels);
  s.sigmas_ = std::move(sigmas);
  s.truncated_ = true;
  s.validate();
  return s;
}

Spectrum Spectrum::from_prefix(ChainComplex k, std::vector<ChainComplex> levels,
                               std::vector<ChainMap> sigmas) {
  if (levels.size() < 2 || sigmas.size() + 1 != levels.size()) {
    throw ShapeError("from_prefix: need levels 0..T+1 and structure maps 0..T");
  }
  const std::size_t T = levels.size() - 2;
  if (levels[T + 1] != tensor(levels[T], k)) {
    throw ValidationError("from_prefix: level " + std::to_string(T + 1) +
                          " is not the suspension of level " + std::to_string(T));
  }
  const ChainMap& last = sigmas[T];
  Scalar c = 1;
  bool found = false;
  for (int n = 0; n <= last.top() && !found; ++n) {
    const Matrix m = last.mat(n);
    if (m.rows() > 0) {
      c = m(0, 0);
      found = true;
    }
  }
  if (c == 0 || last != ChainMap::scalar(levels[T + 1], c)) {
    throw ValidationError("from_prefix: structure map at level " + std::to_string(T) +
                          " is not a scalar identity");
  }
  levels.pop_back();
  sigmas.pop_back();
  return Spectrum(std::move(k), std::move(levels), std::move(sigmas), c);
}

Spectrum Spectrum::zero(const ChainComplex& k) {
  return Spectrum(k, {ChainComplex::zero(k.prime())}, {});
}

void Spectrum::validate() const {
  if (levels_.empty()) throw ShapeError("spectrum needs at least one level");
  if (sigmas_.size() + 1 != levels_.size()) {
    throw ShapeError("spectrum: expected " + std::to_string(levels_.size() - 1) +
                     " structure maps, got " + std::to_string(sigmas_.size()));
  }
  for (std::size_t n = 0; n < sigmas_.size(); ++n) {
    if (sigmas_[n].source() != tensor(levels_[n], k_) || sigmas_[n].target() != levels_[n + 1]) {
      throw ShapeError("spectrum: structure map " + std::to_string(n) +
                       " is not X_n ⊗ K → X_{n+1}");
    }
  }
  for (const auto& l : levels_) {
    if (l.prime() != k_.prime()) throw ShapeError("spectrum: mixed characteristics");
  }
}

ChainComplex Spectrum::level(int n) const {
  if (n < 0) throw std::out_of_range("negative spectrum level");
  if (n <= tail_index()) return levels_[static_cast<std::size_t>(n)];
  if (truncated_) {
    throw std::out_of_range("level " + std::to_string(n) + " beyond the horizon " +
                            std::to_string(tail_index()) + " of a truncated spectrum");
  }
  ChainComplex c = levels_.back();
  for (int i = tail_index(); i < n; ++i) c = tensor(c, k_);
  return c;
}

ChainMap Spectrum::sigma(int n) const {
  if (n < 0) throw std::out_of_range("negative spectrum level");
  if (n < tail_index()) return sigmas_[static_cast<std::size_t>(n)];
  if (truncated_) {
    throw std::out_of_range("structure map " + std::to_string(n) + " beyond the horizon");
  }
  return ChainMap::scalar(level(n + 1), tail_scalar_);
}

ChainMap Spectrum::sigma_adjoint(int n) const { return adjoint_GU(sigma(n), level(n), k_); }

ChainMap Spectrum::iterated_sigma(int m, int r) const {
  if (r < 0) throw std::invalid_argument("negative iteration count");
  if (r == 0) return ChainMap::identity(level(m));
  ChainMap g = sigma(m);
  for (int j = 1; j < r; ++j) g = sigma(m + j) * tensor(g, ChainMap::identity(k_));
  return g;
}

bool Spectrum::operator==(const Spectrum& o) const {
  // Compares the spectra themselves, not the length of their stored prefix.
  if (k_ != o.k_ || truncated_ != o.truncated_) return false;
  if (truncated_) return levels_ == o.levels_ && sigmas_ == o.sigmas_;
  const int top = std::max(tail_index(), o.tail_index());
  for (int n = 0; n <= top + 1; ++n) {
    if (level(n) != o.level(n)) return false;
  }
  for (int n = 0; n <= top; ++n) {
    if (sigma(n) != o.sigma(n)) return false;
  }
  return true;
}

// -- SpectrumMap ------------------------------------------------------------

namespace {

int stored_extent(const Spectrum& s, const Spectrum& t) {
  if (s.is_truncated() && t.is_truncated()) return std::min(s.tail_index(), t.tail_index());
  if (s.is_truncated()) return s.tail_index();
  if (t.is_truncated()) return t.tail_index();
  return std::max(s.tail_index(), t.tail_index());
}

}  // namespace

int comparison_horizon(const Spectrum& a, const Spectrum& b) {
  const int m = stored_extent(a, b);
  return (a.is_truncated() || b.is_truncated()) ? m : m + 1;
}

SpectrumMap::SpectrumMap(Spectrum source, Spectrum target, std::vector<ChainMap> comps)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.K() != target_.K()) throw ShapeError("spectrum map: different K");
  const int M = stored_extent(source_, target_);
  if (static_cast<int>(comps.size()) < M + 1) {
    throw ShapeError("spectrum map: need components 0.." + std::to_string(M) + ", got " +
                     std::to_string(comps.size()));
  }
  const bool truncated = source_.is_truncated() || target_.is_truncated();
  if (truncated && static_cast<int>(comps.size()) > M + 1) comps.resize(M + 1);
  for (std::size_t n = 0; n < comps.size(); ++n) {
    const int lv = static_cast<int>(n);
    if (comps[n].source() != source_.level(lv) || comps[n].target() != target_.level(lv)) {
      throw ShapeError("spectrum map: component " + std::to_string(n) + " has the wrong shape");
    }
  }
  const ChainMap idk = ChainMap::identity(source_.K());
  for (std::size_t n = 0; n + 1 < comps.size(); ++n) {
    const int lv = static_cast<int>(n);
    if (comps[n + 1] * source_.sigma(lv) != target_.sigma(lv) * tensor(comps[n], idk)) {
      throw ValidationError("spectrum map: structure square fails at level " + std::to_string(n));
    }
  }
  comps_.assign(comps.begin(), comps.begin() + (M + 1));
  for (std::size_t n = static_cast<std::size_t>(M + 1); n < comps.size(); ++n) {
    if (comps[n] != comp(static_cast<int>(n))) {
      throw ValidationError("spectrum map: component " + std::to_string(n) +
                            " disagrees with the tail extension");
    }
  }
}

SpectrumMap SpectrumMap::identity(const Spectrum& x) {
  std::vector<ChainMap> comps;
  for (int n = 0; n <= x.tail_index(); ++n) comps.push_back(ChainMap::identity(x.level(n)));
  return SpectrumMap(x, x, comps);
}

SpectrumMap SpectrumMap::zero(const Spectrum& s, const Spectrum& t) {
  std::vector<ChainMap> comps;
  for (int n = 0; n <= stored_extent(s, t); ++n) comps.push_back(ChainMap::zero(s.level(n), t.level(n)));
  return SpectrumMap(s, t, comps);
}

ChainMap SpectrumMap::comp(int n) const {
  if (n < 0) throw std::out_of_range("negative level");
  if (n <= stored_top()) return comps_[static_cast<std::size_t>(n)];
  if (source_.is_truncated() || target_.is_truncated()) {
    throw std::out_of_range("map component beyond the horizon of a truncated spectrum");
  }
  const Field f(source_.prime());
  const Scalar ratio = f.mul(target_.tail_scalar(), f.inv(source_.tail_scalar()));
  ChainMap g = comps_.back();
  for (int i = stored_top(); i < n; ++i) g = shifted_by_K(g, source_.K(), ratio);
  return g;
}

SpectrumMap SpectrumMap::operator*(const SpectrumMap& f) const {
  if (f.target_ != source_) throw ShapeError("spectrum map composition: mismatch");
  const int limit = stored_extent(f.source_, target_);
  std::vector<ChainMap> comps;
  for (int n = 0; n <= limit; ++n) comps.push_back(comp(n) * f.comp(n));
  return SpectrumMap(f.source_, target_, comps);
}

SpectrumMap SpectrumMap::operator+(const SpectrumMap& o) const {
  if (o.source_ != source_ || o.target_ != target_) throw ShapeError("spectrum map sum: mismatch");
  std::vector<ChainMap> comps;
  for (int n = 0; n <= stored_top(); ++n) comps.push_back(comp(n) + o.comp(n));
  return SpectrumMap(source_, target_, comps);
}

SpectrumMap SpectrumMap::operator-(const SpectrumMap& o) const { return *this + o.scaled(-1); }

SpectrumMap SpectrumMap::scaled(long long c) const {
  std::vector<ChainMap> comps;
  for (const auto& g : comps_) comps.push_back(g.scaled(c));
  return SpectrumMap(source_, target_, comps);
}

bool SpectrumMap::operator==(const SpectrumMap& o) const {
  if (source_ != o.source_ || target_ != o.target_) return false;
  const int top = std::max(stored_top(), o.stored_top());
  for (int n = 0; n <= top; ++n) {
    if (comp(n) != o.comp(n)) return false;
  }
  return true;
}

// -- free, evaluation, cofree -----------------------------------------------

Spectrum free_spectrum(int n, const ChainComplex& a, const ChainComplex& k) {
  if (n < 0) throw std::invalid_argument("free_spectrum: negative level");
  const ChainComplex z = ChainComplex::zero(k.prime());
  std::vector<ChainComplex> levels(static_cast<std::size_t>(n), z);
  levels.push_back(a);
  std::vector<ChainMap> sigmas;
  for (int m = 0; m < n; ++m) sigmas.push_back(ChainMap::zero(tensor(z, k), levels[m + 1]));
  return Spectrum(k, levels, sigmas);
}

ChainComplex eval(int n, const Spectrum& x) { return x.level(n); }

Spectrum cofree(int n, const ChainComplex& a, const ChainComplex& k) {
  if (n < 0) throw std::invalid_argument("cofree: negative level");
  std::vector<ChainComplex> levels(static_cast<std::size_t>(n) + 2);
  levels[n] = a;
  levels[n + 1] = ChainComplex::zero(k.prime());
  for (int m = n - 1; m >= 0; --m) levels[m] = loops_U(levels[m + 1], k);
  std::vector<ChainMap> sigmas;
  for (int m = 0; m < n; ++m) sigmas.push_back(counit_GU(levels[m + 1], k));
  sigmas.push_back(ChainMap::zero(tensor(a, k), levels[n + 1]));
  return Spectrum(k, levels, sigmas);
}

SpectrumMap free_extension(int n, const ChainMap& phi, const Spectrum& x) {
  const ChainComplex& k = x.K();
  const Spectrum fa = free_spectrum(n, phi.source(), k);
  if (phi.target() != x.level(n)) throw ShapeError("free_extension: φ must land in X_n");
  const int M = stored_extent(fa, x);
  std::vector<ChainMap> comps;
  for (int m = 0; m < n && m <= M; ++m) comps.push_back(ChainMap::zero(fa.level(m), x.level(m)));
  ChainMap g = phi;
  for (int m = n; m <= M; ++m) {
    comps.push_back(g);
    g = x.sigma(m) * tensor(g, ChainMap::identity(k));
  }
  return SpectrumMap(fa, x, comps);
}

SpectrumMap cofree_extension(int n, const ChainMap& psi, const Spectrum& x) {
  const ChainComplex& k = x.K();
  if (psi.source() != x.level(n)) throw ShapeError("cofree_extension: ψ must start at X_n");
  const Spectrum ra = cofree(n, psi.target(), k);
  const int M = stored_extent(x, ra);
  std::vector<ChainMap> comps(static_cast<std::size_t>(M) + 1);
  comps[n] = psi;
  for (int m = n - 1; m >= 0; --m) comps[m] = loops_U(comps[m + 1], k) * x.sigma_adjoint(m);
  for (int m = n + 1; m <= M; ++m) comps[m] = ChainMap::zero(x.level(m), ra.level(m));
  return SpectrumMap(x, ra, comps);
}

SpectrumMap free_map(int n, const ChainMap& f, const ChainComplex& k) {
  const Spectrum s = free_spectrum(n, f.source(), k), t = free_spectrum(n, f.target(), k);
  std::vector<ChainMap> comps;
  for (int m = 0; m < n; ++m) comps.push_back(ChainMap::zero(s.level(m), t.level(m)));
  comps.push_back(f);
  return SpectrumMap(s, t, comps);
}

SpectrumMap cofree_map(int n, const ChainMap& f, const ChainComplex& k) {
  const Spectrum s = cofree(n, f.source(), k), t = cofree(n, f.target(), k);
  std::vector<ChainMap> comps(static_cast<std::size_t>(n) + 2);
  comps[n] = f;
  for (int m = n - 1; m >= 0; --m) comps[m] = loops_U(comps[m + 1], k);
  comps[n + 1] = ChainMap::zero(s.level(n + 1), t.level(n + 1));
  return SpectrumMap(s, t, comps);
}

AdjunctionReport adjunction_check(AdjunctionKind kind, const std::vector<AdjunctionSample>& samples) {
  AdjunctionReport report;
  auto fail = [&](std::size_t i, const std::string& what) {
    report.failures.push_back("sample " + std::to_string(i) + ": " + what);
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const ChainComplex& k = s.x.K();
    switch (kind) {
      case AdjunctionKind::FreeEval: {
        // ε_{F_n a} ∘ F_n(η_a) = id and Ev_n(ε_X) ∘ η_{X_n} = id.
        const Spectrum fa = free_spectrum(s.n, s.a, k);
        const SpectrumMap eta_free = free_map(s.n, ChainMap::identity(s.a), k);
        const SpectrumMap eps_fa = free_extension(s.n, ChainMap::identity(fa.level(s.n)), fa);
        if (eps_fa * eta_free != SpectrumMap::identity(fa)) fail(i, "ε_F ∘ Fη != id");
        const SpectrumMap eps_x = free_extension(s.n, ChainMap::identity(s.x.level(s.n)), s.x);
        if (!eps_x.comp(s.n).is_identity()) fail(i, "Ev(ε) ∘ η_Ev != id");
        break;
      }
      case AdjunctionKind::EvalCofree: {
        // Ev_n(η_X) followed by ε = id, and R_n(ε_a) ∘ η_{R_n a} = id.
        const SpectrumMap eta_x = cofree_extension(s.n, ChainMap::identity(s.x.level(s.n)), s.x);
        if (!eta_x.comp(s.n).is_identity()) fail(i, "ε_Ev ∘ Ev(η) != id");
        const Spectrum ra = cofree(s.n, s.a, k);
        const SpectrumMap eta_ra = cofree_extension(s.n, ChainMap::identity(s.a), ra);
        const SpectrumMap r_eps = cofree_map(s.n, ChainMap::identity(s.a), k);
        if (r_eps * eta_ra != SpectrumMap::identity(ra)) fail(i, "R(ε) ∘ η_R != id");
        break;
      }
      case AdjunctionKind::ShiftTS: {
        // ε_{tX} ∘ t(η_X) = id_{tX} and s(ε_X) ∘ η_{sX} = id_{sX}.
        const Spectrum tx = shift_t(s.x);
        if (shift_counit(tx) * shift_t(shift_unit(s.x)) != SpectrumMap::identity(tx)) {
          fail(i, "ε_t ∘ tη != id");
        }
        const Spectrum sx = shift_s(s.x);
        if (shift_s(shift_counit(s.x)) * shift_unit(sx) != SpectrumMap::identity(sx)) {
          fail(i, "sε ∘ η_s != id");
        }
        break;
      }
    }
    ++report.checked;
  }
  return report;
}

// -- prolongations and shifts -----------------------------------------------

Spectrum prolong_G_no_twist(const Spectrum& x) {
  const ChainComplex& k = x.K();
  const int count = x.tail_index() + (x.is_truncated() ? 1 : 2);
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n < count; ++n) {
    levels.push_back(tensor(x.level(n), k));
    if (n + 1 < count) sigmas.push_back(tensor(x.sigma(n), ChainMap::identity(k)));
  }
  return assemble(k, x.is_truncated(), levels, sigmas);
}

SpectrumMap prolong_G_no_twist(const SpectrumMap& f) {
  const Spectrum s = prolong_G_no_twist(f.source()), t = prolong_G_no_twist(f.target());
  std::vector<ChainMap> comps;
  for (int n = 0; n <= f.stored_top(); ++n) {
    comps.push_back(tensor(f.comp(n), ChainMap::identity(f.source().K())));
  }
  return SpectrumMap(s, t, comps);
}

Spectrum tensor_K_twist(const Spectrum& x) {
  const ChainComplex& k = x.K();
  const int count = x.tail_index() + (x.is_truncated() ? 1 : 2);
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n < count; ++n) {
    const ChainComplex xn = x.level(n);
    levels.push_back(tensor(xn, k));
    if (n + 1 < count) {
      const ChainMap swap = associator_inverse(xn, k, k) *
                            tensor(ChainMap::identity(xn), twist(k, k)) * associator(xn, k, k);
      sigmas.push_back(tensor(x.sigma(n), ChainMap::identity(k)) * swap);
    }
  }
  return assemble(k, x.is_truncated(), levels, sigmas);
}

Spectrum prolong_U(const Spectrum& x) {
  const ChainComplex& k = x.K();
  const int count = x.tail_index() + (x.is_truncated() ? 1 : 3);
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n < count; ++n) {
    const ChainComplex xn = x.level(n);
    levels.push_back(loops_U(xn, k));
    if (n + 1 < count) {
      const ChainMap tau = unit_GU(xn, k) * counit_GU(xn, k);
      sigmas.push_back(loops_U(x.sigma(n), k) * tau);
    }
  }
  return assemble(k, x.is_truncated(), levels, sigmas);
}

SpectrumMap prolong_U(const SpectrumMap& f) {
  const Spectrum s = prolong_U(f.source()), t = prolong_U(f.target());
  std::vector<ChainMap> comps;
  const int top = std::max(f.stored_top(), comparison_horizon(s, t) - 1);
  for (int n = 0; n <= top; ++n) {
    if (!s.has_level(n) || !t.has_level(n)) break;
    comps.push_back(loops_U(f.comp(n), f.source().K()));
  }
  return SpectrumMap(s, t, comps);
}

Spectrum shift_s(const Spectrum& x) {
  const ChainComplex& k = x.K();
  if (x.is_truncated() && x.tail_index() < 1) {
    throw std::out_of_range("shift of a truncated spectrum with a single level");
  }
  const int count = x.is_truncated() ? x.tail_index() : std::max(x.tail_index() - 1, 0) + 2;
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n < count; ++n) {
    levels.push_back(x.level(n + 1));
    if (n + 1 < count) sigmas.push_back(x.sigma(n + 1));
  }
  return assemble(k, x.is_truncated(), levels, sigmas);
}

SpectrumMap shift_s(const SpectrumMap& f) {
  const Spectrum s = shift_s(f.source()), t = shift_s(f.target());
  std::vector<ChainMap> comps;
  const int top = std::max(f.stored_top() - 1, comparison_horizon(s, t) - 1);
  for (int n = 0; n <= top; ++n) {
    if (!s.has_level(n) || !t.has_level(n)) break;
    comps.push_back(f.comp(n + 1));
  }
  return SpectrumMap(s, t, comps);
}

Spectrum shift_t(const Spectrum& x) {
  const ChainComplex& k = x.K();
  const ChainComplex z = ChainComplex::zero(k.prime());
  const int count = x.tail_index() + (x.is_truncated() ? 2 : 3);
  std::vector<ChainComplex> levels{z};
  std::vector<ChainMap> sigmas{ChainMap::zero(tensor(z, k), x.level(0))};
  for (int n = 1; n < count; ++n) {
    levels.push_back(x.level(n - 1));
    if (n + 1 < count) sigmas.push_back(x.sigma(n - 1));
  }
  return assemble(k, x.is_truncated(), levels, sigmas);
}

SpectrumMap shift_t(const SpectrumMap& f) {
  const Spectrum s = shift_t(f.source()), t = shift_t(f.target());
  std::vector<ChainMap> comps{ChainMap::zero(s.level(0), t.level(0))};
  const int top = std::max(f.stored_top() + 1, comparison_horizon(s, t) - 1);
  for (int n = 1; n <= top; ++n) {
    if (!s.has_level(n) || !t.has_level(n)) break;
    comps.push_back(f.comp(n - 1));
  }
  return SpectrumMap(s, t, comps);
}

SpectrumMap shift_unit(const Spectrum& x) {
  const Spectrum stx = shift_s(shift_t(x));
  std::vector<ChainMap> comps;
  for (int n = 0; n <= stx.tail_index(); ++n) comps.push_back(ChainMap::identity(x.level(n)));
  for (int n = stx.tail_index() + 1; n <= x.tail_index(); ++n) {
    comps.push_back(ChainMap::identity(x.level(n)));
  }
  return SpectrumMap(x, stx, comps);
}

SpectrumMap shift_counit(const Spectrum& x) {
  const Spectrum tsx = shift_t(shift_s(x));
  const int top = comparison_horizon(tsx, x);
  std::vector<ChainMap> comps{ChainMap::zero(tsx.level(0), x.level(0))};
  for (int n = 1; n <= top; ++n) {
    if (!tsx.has_level(n) || !x.has_level(n)) break;
    comps.push_back(ChainMap::identity(x.level(n)));
  }
  return SpectrumMap(tsx, x, comps);
}

Spectrum prolong_functor(const BaseFunctor& f, const Spectrum& x, int horizon) {
  const ChainComplex& k = x.K();
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n <= horizon; ++n) {
    levels.push_back(f.on_object(x.level(n)));
    if (n == horizon) break;
    const ChainMap& s = x.sigma(n);
    // Naturality of τ along σ_n : X_n⊗K → X_{n+1}.
    const ChainMap lhs = f.tau(x.level(n + 1)) * tensor(f.on_map(s), ChainMap::identity(k));
    const ChainMap rhs = f.on_map(tensor(s, ChainMap::identity(k))) * f.tau(s.source());
    if (lhs != rhs) {
      throw ValidationError("prolong_functor: τ is not natural along σ_" + std::to_string(n));
    }
    sigmas.push_back(f.on_map(s) * f.tau(x.level(n)));
  }
  return Spectrum::truncated(k, levels, sigmas);
}

// -- stabilization ----------------------------------------------------------

RResult R_once(const Spectrum& x) {
  const Spectrum rx = shift_s(prolong_U(x));
  std::vector<ChainMap> comps;
  const int top = comparison_horizon(x, rx) - (x.is_truncated() ? 0 : 1);
  for (int n = 0; n <= top; ++n) {
    if (!x.has_level(n + 1) || !rx.has_level(n)) break;
    comps.push_back(x.sigma_adjoint(n));
  }
  return {rx, SpectrumMap(x, rx, comps)};
}

SpectrumMap R_map(const SpectrumMap& f) { return shift_s(prolong_U(f)); }

RInfinity R_infinity(const Spectrum& x, int min_stage) {
  if (x.is_truncated()) throw std::invalid_argument("R_infinity needs a spectrum with a tail");
  const int stage = std::max(min_stage, x.tail_index() + 1);
  Spectrum cur = x;
  SpectrumMap j = SpectrumMap::identity(x);
  for (int i = 0; i < stage; ++i) {
    RResult r = R_once(cur);
    j = r.iota * j;
    cur = r.value;
  }
  // One extra stage: the next ι must be an isomorphism at every level.
  const RResult next = R_once(cur);
  for (int n = 0; n <= comparison_horizon(cur, next.value); ++n) {
    if (!is_iso(next.iota.comp(n))) {
      throw UnstableColimit("R^∞ did not stabilize by stage " + std::to_string(stage) +
                            " at level " + std::to_string(n));
    }
  }
  return {cur, j, stage};
}

SpectrumMap R_infinity_map(const SpectrumMap& f, int min_stage) {
  const int stage =
      std::max({min_stage, f.source().tail_index() + 1, f.target().tail_index() + 1});
  SpectrumMap g = f;
  for (int i = 0; i < stage; ++i) g = R_map(g);
  return g;
}

bool is_U_spectrum(const Spectrum& x, int max_level) {
  int top = std::max(max_level, x.tail_index());
  if (x.is_truncated()) top = std::min(top, x.tail_index() - 1);
  for (int n = 0; n <= top; ++n) {
    if (!is_quasi_iso(x.sigma_adjoint(n))) return false;
  }
  return true;
}

bool is_level_equivalence(const SpectrumMap& f, const ProbeGrid& grid) {
  const int top = std::max(grid.max_level, comparison_horizon(f.source(), f.target()));
  for (int n = 0; n <= top; ++n) {
    if (!f.source().has_level(n) || !f.target().has_level(n)) break;
    if (!is_quasi_iso(f.comp(n))) return false;
  }
  return true;
}

bool is_level_fibration(const SpectrumMap& f, int max_level) {
  const int top = std::max(max_level, comparison_horizon(f.source(), f.target()));
  for (int n = 0; n <= top; ++n) {
    if (!f.source().has_level(n) || !f.target().has_level(n)) break;
    if (!is_surjective(f.comp(n), 1)) return false;
  }
  return true;
}

StablePi stable_pi(const Spectrum& x, int k) {
  if (x.is_truncated()) throw std::invalid_argument("stable_pi needs a spectrum with a tail");
  const int d = x.suspension_degree();
  const int n0 = x.tail_index() + std::abs(k) + 1;
  const ChainComplex xn = x.level(n0);
  const ChainMap s = x.sigma(n0);
  const int deg_n = k + d * n0;
  const int deg_next = k + d * (n0 + 1);
  const std::size_t here = homology(xn, deg_n);
  const std::size_t next = homology(x.level(n0 + 1), deg_next);
  const std::size_t through = deg_next < 0 ? 0 : induced_rank(s, deg_next);
  if (here != next || through != here) {
    throw UnstableColimit("stable_pi: colimit for k = " + std::to_string(k) +
                          " not stable at stage " + std::to_string(n0));
  }
  return {here, n0};
}

bool is_stable_equivalence(const SpectrumMap& f, const ProbeGrid& grid) {
  return is_level_equivalence(R_infinity_map(f), grid);
}

bool is_projective_cofibration(const SpectrumMap& f) {
  const Spectrum& a = f.source();
  const Spectrum& b = f.target();
  const ChainMap idk = ChainMap::identity(a.K());
  const int top = comparison_horizon(a, b);
  if (!is_injective(f.comp(0))) return false;
  for (int n = 1; n <= top; ++n) {
    if (!a.has_level(n) || !b.has_level(n)) break;
    const Pushout po = pushout(a.sigma(n - 1), tensor(f.comp(n - 1), idk));
    const ChainMap corner = induced_from_pushout(po, f.comp(n), b.sigma(n - 1));
    if (!is_injective(corner)) return false;
  }
  return true;
}

SpectrumPullback pullback(const SpectrumMap& f, const SpectrumMap& g) {
  if (f.target() != g.target()) throw ShapeError("spectrum pullback: target mismatch");
  const ChainComplex& k = f.source().K();
  const bool truncated =
      f.source().is_truncated() || g.source().is_truncated() || f.target().is_truncated();
  const int top = std::max(
      {f.source().tail_index(), g.source().tail_index(), f.target().tail_index()});
  const int count = top + (truncated ? 1 : 2);
  std::vector<Pullback> pbs;
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n < count; ++n) {
    pbs.push_back(pullback(f.comp(n), g.comp(n)));
    levels.push_back(pbs.back().complex);
  }
  const ChainMap idk = ChainMap::identity(k);
  for (int n = 0; n + 1 < count; ++n) {
    const ChainMap u = f.source().sigma(n) * tensor(pbs[n].to_b, idk);
    const ChainMap v = g.source().sigma(n) * tensor(pbs[n].to_c, idk);
    sigmas.push_back(induced_to_pullback(pbs[n + 1], u, v));
  }
  Spectrum p = assemble(k, truncated, levels, sigmas);
  std::vector<ChainMap> cb, cc;
  for (int n = 0; n < count; ++n) {
    cb.push_back(pbs[n].to_b);
    cc.push_back(pbs[n].to_c);
  }
  return {p, SpectrumMap(p, f.source(), cb), SpectrumMap(p, g.source(), cc)};
}

bool is_stable_fibration(const SpectrumMap& f, const ProbeGrid& grid) {
  if (!is_level_fibration(f, grid.max_level)) return false;
  const Spectrum& x = f.source();
  const Spectrum& y = f.target();
  const int stage = std::max(x.tail_index(), y.tail_index()) + 1;
  const RInfinity rx = R_infinity(x, stage), ry = R_infinity(y, stage);
  const SpectrumMap rf = R_infinity_map(f, stage);
  const int top = std::max(grid.max_level, comparison_horizon(x, y));
  for (int n = 0; n <= top; ++n) {
    const Pullback pb = pullback(ry.j.comp(n), rf.comp(n));
    const ChainMap into = induced_to_pullback(pb, f.comp(n), rx.j.comp(n));
    if (!is_quasi_iso(into)) return false;
  }
  return true;
}

SpectrumMap s_map(int n, const ChainComplex& a, const ChainComplex& k) {
  const Spectrum fa = free_spectrum(n, a, k);
  return free_extension(n + 1, ChainMap::identity(fa.level(n + 1)), fa);
}

// -- lifting ----------------------------------------------------------------

std::optional<SpectrumMap> has_lift(const SpectrumMap& i, const SpectrumMap& p,
                                    const SpectrumMap& f, const SpectrumMap& g) {
  const Spectrum& a = i.source();
  const Spectrum& b = i.target();
  const Spectrum& x = p.source();
  const Spectrum& y = p.target();
  if (f.source() != a || f.target() != x || g.source() != b || g.target() != y) {
    throw ShapeError("spectrum has_lift: square shapes do not match");
  }
  const std::uint32_t pr = a.prime();
  const ChainComplex& k = a.K();
  const int d = k.top();
  const bool truncated = a.is_truncated() || b.is_truncated() || x.is_truncated() || y.is_truncated();
  const int M = truncated ? std::min({a.tail_index(), b.tail_index(), x.tail_index(), y.tail_index()})
                          : std::max({a.tail_index(), b.tail_index(), x.tail_index(), y.tail_index()});
  const int own = stored_extent(b, x);
  const ChainMap idk = ChainMap::identity(k);
  LinearSystem sys(pr);
  std::vector<std::vector<std::size_t>> h(static_cast<std::size_t>(M) + 1);
  std::vector<ChainComplex> bl, xl;
  for (int m = 0; m <= M; ++m) {
    bl.push_back(b.level(m));
    xl.push_back(x.level(m));
  }
  for (int m = 0; m <= M; ++m) {
    const int top = std::max(bl[m].top(), xl[m].top());
    for (int t = 0; t <= top; ++t) h[m].push_back(sys.add_unknown(xl[m].dim(t), bl[m].dim(t)));
  }
  auto unknown = [&](int m, int t) -> std::optional<std::size_t> {
    if (t < 0 || t >= static_cast<int>(h[m].size())) return std::nullopt;
    return h[m][t];
  };
  for (int m = 0; m <= M; ++m) {
    const ChainMap im = i.comp(m), pm = p.comp(m), fm = f.comp(m), gm = g.comp(m);
    for (int t = 0; t < static_cast<int>(h[m].size()); ++t) {
      const std::size_t u = h[m][t];
      const std::size_t bd = bl[m].dim(t), xd = xl[m].dim(t);
      sys.add_equation({{Matrix::identity(pr, xd), u, im.mat(t)}}, fm.mat(t));
      sys.add_equation({{pm.mat(t), u, Matrix::identity(pr, bd)}}, gm.mat(t));
      if (t >= 1) {
        sys.add_equation({{xl[m].diff(t), u, Matrix::identity(pr, bd)},
                          {Matrix::scalar(pr, xl[m].dim(t - 1), -1), h[m][t - 1], bl[m].diff(t)}},
                         Matrix(pr, xl[m].dim(t - 1), bd));
      }
    }
    if (m < M) {
      // h_{m+1} σ^B_m = σ^X_m (h_m ⊗ K); with K one-dimensional in degree d,
      // (h_m ⊗ K) in degree t is h_m in degree t − d.
      const ChainMap sb = b.sigma(m), sx = x.sigma(m);
      const ChainComplex bk = tensor(bl[m], k);
      for (int t = 0; t <= std::max(bl[m + 1].top(), xl[m + 1].top()); ++t) {
        std::vector<LinearSystem::Term> terms;
        if (auto u = unknown(m + 1, t)) {
          terms.push_back({Matrix::identity(pr, xl[m + 1].dim(t)), *u, sb.mat(t)});
        }
        if (auto u = unknown(m, t - d)) {
          terms.push_back({sx.mat(t).scaled(-1), *u, Matrix::identity(pr, bk.dim(t))});
        }
        if (!terms.empty()) sys.add_equation(terms, Matrix(pr, xl[m + 1].dim(t), bk.dim(t)));
      }
    }
    if (!truncated && m > own) {
      // Beyond the tails of B and X the lift must follow the extension rule.
      const Field fl(pr);
      const Scalar ratio = fl.mul(x.tail_scalar(), fl.inv(b.tail_scalar()));
      for (int t = 0; t < static_cast<int>(h[m].size()); ++t) {
        std::vector<LinearSystem::Term> terms{
            {Matrix::identity(pr, xl[m].dim(t)), h[m][t], Matrix::identity(pr, bl[m].dim(t))}};
        if (auto u = unknown(m - 1, t - d)) {
          terms.push_back({Matrix::scalar(pr, xl[m].dim(t), -static_cast<long long>(ratio)), *u,
                           Matrix::identity(pr, bl[m].dim(t))});
        }
        sys.add_equation(terms, Matrix(pr, xl[m].dim(t), bl[m].dim(t)));
      }
    }
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  std::vector<ChainMap> comps;
  for (int m = 0; m <= M; ++m) {
    std::vector<Matrix> mats;
    for (auto u : h[m]) mats.push_back((*sol)[u]);
    comps.emplace_back(bl[m], xl[m], mats);
  }
  SpectrumMap lift(b, x, comps);
  if (lift * i != f || p * lift != g) throw ValidationError("spectrum lift failed re-validation");
  return lift;
}

// -- random generation ------------------------------------------------------

Spectrum random_spectrum(const ChainComplex& k, std::mt19937_64& rng, const SpectrumSizes& sizes) {
  const int tail = std::uniform_int_distribution<int>(0, sizes.max_tail)(rng);
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n <= tail; ++n) levels.push_back(random_complex(k.prime(), rng, sizes.complex));
  for (int n = 0; n < tail; ++n) {
    sigmas.push_back(random_chain_map(tensor(levels[n], k), levels[n + 1], rng));
  }
  return Spectrum(k, levels, sigmas);
}

SpectrumMap random_spectrum_map(const Spectrum& x, const Spectrum& y, std::mt19937_64& rng) {
  const std::uint32_t pr = x.prime();
  const ChainComplex& k = x.K();
  const int d = k.top();
  const int M = stored_extent(x, y);
  LinearSystem sys(pr);
  std::vector<std::vector<std::size_t>> h(static_cast<std::size_t>(M) + 1);
  std::vector<ChainComplex> xl, yl;
  for (int m = 0; m <= M; ++m) {
    xl.push_back(x.level(m));
    yl.push_back(y.level(m));
    const int top = std::max(xl[m].top(), yl[m].top());
    for (int t = 0; t <= top; ++t) h[m].push_back(sys.add_unknown(yl[m].dim(t), xl[m].dim(t)));
  }
  for (int m = 0; m <= M; ++m) {
    for (int t = 1; t < static_cast<int>(h[m].size()); ++t) {
      sys.add_equation({{yl[m].diff(t), h[m][t], Matrix::identity(pr, xl[m].dim(t))},
                        {Matrix::scalar(pr, yl[m].dim(t - 1), -1), h[m][t - 1], xl[m].diff(t)}},
                       Matrix(pr, yl[m].dim(t - 1), xl[m].dim(t)));
    }
    if (m < M) {
      const ChainMap sx = x.sigma(m), sy = y.sigma(m);
      const ChainComplex xk = tensor(xl[m], k);
      for (int t = 0; t <= std::max(xl[m + 1].top(), yl[m + 1].top()); ++t) {
        std::vector<LinearSystem::Term> terms;
        if (t < static_cast<int>(h[m + 1].size())) {
          terms.push_back({Matrix::identity(pr, yl[m + 1].dim(t)), h[m + 1][t], sx.mat(t)});
        }
        if (t - d >= 0 && t - d < static_cast<int>(h[m].size())) {
          terms.push_back({sy.mat(t).scaled(-1), h[m][t - d], Matrix::identity(pr, xk.dim(t))});
        }
        if (!terms.empty()) sys.add_equation(terms, Matrix(pr, yl[m + 1].dim(t), xk.dim(t)));
      }
    }
  }
  auto values = sample(*sys.solution_space(), rng);
  std::vector<ChainMap> comps;
  for (int m = 0; m <= M; ++m) {
    std::vector<Matrix> mats;
    for (auto u : h[m]) mats.push_back(values[u]);
    comps.emplace_back(xl[m], yl[m], mats);
  }
  return SpectrumMap(x, y, comps);
}

}  // namespace stab
