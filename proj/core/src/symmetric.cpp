#include "stab/symmetric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace stab {

namespace {

void require_one_dimensional(const ChainComplex& k) {
  if (k.total_dim() != 1) {
    throw std::invalid_argument("symmetric spectra require K to be one-dimensional, got dims " +
                                k.describe());
  }
}

ChainMap build_map(const ChainComplex& s, const ChainComplex& t,
                   const std::function<Matrix(int)>& degree) {
  std::vector<Matrix> mats;
  for (int n = 0; n <= std::max(s.top(), t.top()); ++n) mats.push_back(degree(n));
  return ChainMap(s, t, mats);
}

std::size_t part_offset(const std::vector<ChainComplex>& parts, std::size_t j, int t) {
  std::size_t off = 0;
  for (std::size_t i = 0; i < j; ++i) off += parts[i].dim(t);
  return off;
}

ChainMap sum_inclusion(const ChainComplex& sum, const std::vector<ChainComplex>& parts,
                       std::size_t j) {
  return build_map(parts[j], sum, [&](int t) {
    Matrix m(sum.prime(), sum.dim(t), parts[j].dim(t));
    const std::size_t off = part_offset(parts, j, t);
    for (std::size_t r = 0; r < parts[j].dim(t); ++r) m.set(off + r, r, 1);
    return m;
  });
}

ChainMap sum_projection(const ChainComplex& sum, const std::vector<ChainComplex>& parts,
                        std::size_t j) {
  return build_map(sum, parts[j], [&](int t) {
    Matrix m(sum.prime(), parts[j].dim(t), sum.dim(t));
    const std::size_t off = part_offset(parts, j, t);
    for (std::size_t r = 0; r < parts[j].dim(t); ++r) m.set(r, off + r, 1);
    return m;
  });
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::vector<ChainComplex> copies(const ChainComplex& a, std::size_t count) {
  return std::vector<ChainComplex>(count, a);
}

SymRep zero_rep(int n, std::uint32_t p) { return SymRep::trivial(n, ChainComplex::zero(p)); }

// The action of Σ_n on Map(Σ_n, a): (h·φ)(g) = φ(g h).
ChainMap coinduced_action(int n, const ChainComplex& a, const ChainComplex& m, const Perm& h) {
  const auto perms = all_perms(n);
  return build_map(m, m, [&](int t) {
    Matrix out(m.prime(), m.dim(t), m.dim(t));
    const std::size_t d = a.dim(t);
    for (std::size_t g = 0; g < perms.size(); ++g) {
      const std::size_t src = perm_rank(perm_compose(perms[g], h));
      for (std::size_t r = 0; r < d; ++r) out.set(g * d + r, src * d + r, 1);
    }
    return out;
  });
}

}  // namespace

// -- permutations -----------------------------------------------------------

Perm perm_identity(int n) {
  Perm g(static_cast<std::size_t>(n));
  std::iota(g.begin(), g.end(), 0);
  return g;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw ShapeError("perm_compose: sizes differ");
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

Perm perm_inverse(const Perm& g) {
  Perm inv(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) inv[static_cast<std::size_t>(g[i])] = static_cast<int>(i);
  return inv;
}

Perm perm_transposition(int n, int i) {
  if (i < 0 || i + 1 >= n) throw std::out_of_range("transposition index out of range");
  Perm g = perm_identity(n);
  std::swap(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(i) + 1]);
  return g;
}

Perm perm_block_sum(const Perm& a, const Perm& b) {
  Perm g = a;
  for (int x : b) g.push_back(static_cast<int>(a.size()) + x);
  return g;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm g = perm_identity(n);
  do {
    out.push_back(g);
  } while (std::next_permutation(g.begin(), g.end()));
  return out;
}

std::size_t perm_rank(const Perm& g) {
  const std::size_t n = g.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += g[j] < g[i] ? 1 : 0;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

int perm_inversions(const Perm& g) {
  int c = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) c += g[i] > g[j] ? 1 : 0;
  }
  return c;
}

std::vector<int> reduced_word(const Perm& g) {
  Perm h = g;
  std::vector<int> word;
  const int n = static_cast<int>(g.size());
  for (;;) {
    int i = 0;
    while (i + 1 < n && h[static_cast<std::size_t>(i)] < h[static_cast<std::size_t>(i) + 1]) ++i;
    if (i + 1 >= n) break;
    h = perm_compose(h, perm_transposition(n, i));
    word.push_back(i);
  }
  return word;
}

std::vector<std::vector<int>> subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Perm shuffle_perm(int n, const std::vector<int>& subset) {
  Perm g;
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (int v : subset) {
    g.push_back(v);
    in[static_cast<std::size_t>(v)] = true;
  }
  for (int v = 0; v < n; ++v) {
    if (!in[static_cast<std::size_t>(v)]) g.push_back(v);
  }
  return g;
}

// -- multi-factor tensors ---------------------------------------------------

namespace {

struct TupleEntry {
  std::vector<int> deg;
  std::vector<std::size_t> idx;
  int total = 0;
  std::size_t pos = 0;
};

std::vector<TupleEntry> tuple_basis(const std::vector<ChainComplex>& factors, std::uint32_t p) {
  std::vector<TupleEntry> cur{{{}, {}, 0, 0}};
  ChainComplex acc = ChainComplex::unit(p);
  for (const auto& f : factors) {
    TensorIndex ti(acc, f);
    std::vector<TupleEntry> next;
    for (const auto& e : cur) {
      for (int q = 0; q <= f.top(); ++q) {
        for (std::size_t j = 0; j < f.dim(q); ++j) {
          TupleEntry n = e;
          n.deg.push_back(q);
          n.idx.push_back(j);
          n.total = e.total + q;
          n.pos = ti.index(n.total, e.total, e.pos, j);
          next.push_back(std::move(n));
        }
      }
    }
    cur = std::move(next);
    acc = tensor(acc, f);
  }
  return cur;
}

}  // namespace

ChainComplex tensor_all(const std::vector<ChainComplex>& factors) {
  if (factors.empty()) throw ShapeError("tensor_all needs at least one factor to fix the prime");
  ChainComplex acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = tensor(acc, factors[i]);
  return acc;
}

ChainMap permute_factors(const std::vector<ChainComplex>& factors, const Perm& g) {
  if (g.size() != factors.size()) throw ShapeError("permute_factors: permutation size");
  const std::uint32_t p = factors.front().prime();
  std::vector<ChainComplex> moved(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) moved[static_cast<std::size_t>(g[i])] = factors[i];
  const ChainComplex src = tensor_all(factors), tgt = tensor_all(moved);
  std::map<std::pair<std::vector<int>, std::vector<std::size_t>>, std::size_t> where;
  for (const auto& e : tuple_basis(moved, p)) where[{e.deg, e.idx}] = e.pos;
  std::vector<Matrix> mats;
  for (int t = 0; t <= std::max(src.top(), tgt.top()); ++t) {
    mats.emplace_back(p, tgt.dim(t), src.dim(t));
  }
  const Field field(p);
  for (const auto& e : tuple_basis(factors, p)) {
    std::vector<int> deg(e.deg.size());
    std::vector<std::size_t> idx(e.idx.size());
    long long crossings = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      deg[static_cast<std::size_t>(g[i])] = e.deg[i];
      idx[static_cast<std::size_t>(g[i])] = e.idx[i];
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (g[i] > g[j]) crossings += static_cast<long long>(e.deg[i]) * e.deg[j];
      }
    }
    mats[static_cast<std::size_t>(e.total)].set(where.at({deg, idx}), e.pos, field.sign(crossings));
  }
  return ChainMap(src, tgt, mats);
}

// -- SymRep -----------------------------------------------------------------

SymRep::SymRep(int n, ChainComplex space, std::vector<ChainMap> gens)
    : n_(n), space_(std::move(space)), gens_(std::move(gens)) {
  if (n < 0) throw std::invalid_argument("negative arity");
  if (static_cast<int>(gens_.size()) != std::max(n - 1, 0)) {
    throw ShapeError("SymRep: arity " + std::to_string(n) + " needs " +
                     std::to_string(std::max(n - 1, 0)) + " generators, got " +
                     std::to_string(gens_.size()));
  }
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].source() != space_ || gens_[i].target() != space_) {
      throw ShapeError("SymRep: generator " + std::to_string(i) + " is not an endomorphism");
    }
    if (!(gens_[i] * gens_[i]).is_identity()) {
      throw ValidationError("SymRep: generator " + std::to_string(i) + " is not an involution");
    }
  }
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      const ChainMap& a = gens_[i];
      const ChainMap& b = gens_[j];
      const bool ok = (j == i + 1) ? (a * b * a == b * a * b) : (a * b == b * a);
      if (!ok) {
        throw ValidationError("SymRep: Coxeter relation fails for generators " + std::to_string(i) +
                              ", " + std::to_string(j));
      }
    }
  }
}

SymRep SymRep::trivial(int n, const ChainComplex& space) {
  return SymRep(n, space,
                std::vector<ChainMap>(static_cast<std::size_t>(std::max(n - 1, 0)),
                                      ChainMap::identity(space)));
}

ChainMap SymRep::act(const Perm& g) const {
  if (static_cast<int>(g.size()) != n_) throw ShapeError("SymRep::act: permutation arity");
  ChainMap m = ChainMap::identity(space_);
  for (int i : reduced_word(g)) m = gen(i) * m;
  return m;
}

bool SymRep::operator==(const SymRep& o) const {
  return n_ == o.n_ && space_ == o.space_ && gens_ == o.gens_;
}

bool is_equivariant(const ChainMap& f, const SymRep& source, const SymRep& target) {
  if (source.arity() != target.arity()) return false;
  for (int i = 0; i + 1 < source.arity(); ++i) {
    if (f * source.gen(i) != target.gen(i) * f) return false;
  }
  return true;
}

bool is_degreewise_projective(const SymRep& r) {
  const int n = r.arity();
  const std::uint32_t p = r.space().prime();
  if (n <= 1 || static_cast<int>(p) > n) return true;  // p does not divide n!
  const auto perms = all_perms(n);
  const std::size_t order = perms.size();
  for (int t = 0; t <= r.space().top(); ++t) {
    const std::size_t d = r.space().dim(t);
    if (d == 0) continue;
    // A Σ_n-splitting of F_p[Σ_n] ⊗ M → M, (g, v) ↦ g·v, exists iff M is projective.
    std::vector<Matrix> blocks;
    for (const auto& g : perms) blocks.push_back(r.act(g).mat(t));
    const Matrix eps = Matrix::hstack(blocks);
    LinearSystem sys(p);
    const std::size_t u = sys.add_unknown(order * d, d);
    for (int i = 0; i + 1 < n; ++i) {
      const Perm s = perm_transposition(n, i);
      Matrix left(p, order * d, order * d);
      for (std::size_t g = 0; g < order; ++g) {
        const std::size_t to = perm_rank(perm_compose(s, perms[g]));
        for (std::size_t k = 0; k < d; ++k) left.set(to * d + k, g * d + k, 1);
      }
      sys.add_equation({{left, u, Matrix::identity(p, d)},
                        {Matrix::scalar(p, order * d, -1), u, r.gen(i).mat(t)}},
                       Matrix(p, order * d, d));
    }
    sys.add_equation({{eps, u, Matrix::identity(p, d)}}, Matrix::identity(p, d));
    if (!sys.solve()) return false;
  }
  return true;
}

// -- SymmetricSpectrum ------------------------------------------------------

SymmetricSpectrum::SymmetricSpectrum(ChainComplex k, std::vector<SymRep> levels,
                                     std::vector<ChainMap> sigmas)
    : k_(std::move(k)), levels_(std::move(levels)), sigmas_(std::move(sigmas)) {
  require_one_dimensional(k_);
  validate();
}

SymmetricSpectrum SymmetricSpectrum::zero(const ChainComplex& k, int horizon) {
  const ChainComplex z = ChainComplex::zero(k.prime());
  std::vector<SymRep> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n <= horizon; ++n) {
    levels.push_back(zero_rep(n, k.prime()));
    if (n < horizon) sigmas.push_back(ChainMap::zero(tensor(z, k), z));
  }
  return SymmetricSpectrum(k, levels, sigmas);
}

void SymmetricSpectrum::validate() const {
  if (levels_.empty()) throw ShapeError("symmetric spectrum needs level 0");
  if (sigmas_.size() + 1 != levels_.size()) {
    throw ShapeError("symmetric spectrum: expected " + std::to_string(levels_.size() - 1) +
                     " structure maps");
  }
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    if (levels_[n].arity() != static_cast<int>(n)) {
      throw ShapeError("symmetric spectrum: level " + std::to_string(n) + " has the wrong arity");
    }
  }
  const ChainMap idk = ChainMap::identity(k_);
  for (std::size_t n = 0; n < sigmas_.size(); ++n) {
    const ChainMap& s = sigmas_[n];
    if (s.source() != tensor(levels_[n].space(), k_) || s.target() != levels_[n + 1].space()) {
      throw ShapeError("symmetric spectrum: σ_" + std::to_string(n) + " has the wrong shape");
    }
    for (int i = 0; i + 1 < static_cast<int>(n); ++i) {
      if (s * tensor(levels_[n].gen(i), idk) != levels_[n + 1].gen(i) * s) {
        throw ValidationError("symmetric spectrum: σ_" + std::to_string(n) +
                              " is not equivariant for s_" + std::to_string(i));
      }
    }
  }
  // Σ_2 acting on the two new letters of X_n ⊗ K ⊗ K → X_{n+2}.
  for (std::size_t n = 0; n + 2 <= sigmas_.size(); ++n) {
    const ChainComplex& x = levels_[n].space();
    const ChainMap two = sigmas_[n + 1] * tensor(sigmas_[n], idk);
    const ChainMap swap = associator_inverse(x, k_, k_) *
                          tensor(ChainMap::identity(x), twist(k_, k_)) * associator(x, k_, k_);
    if (two * swap != levels_[n + 2].gen(static_cast<int>(n)) * two) {
      throw ValidationError("symmetric spectrum: X_" + std::to_string(n) +
                            " ⊗ K ⊗ K → X_" + std::to_string(n + 2) +
                            " is not Σ_2-equivariant in the K letters");
    }
  }
}

const SymRep& SymmetricSpectrum::level(int n) const {
  if (n < 0 || n > horizon()) {
    throw std::out_of_range("level " + std::to_string(n) + " beyond the horizon " +
                            std::to_string(horizon()));
  }
  return levels_[static_cast<std::size_t>(n)];
}

const ChainMap& SymmetricSpectrum::sigma(int n) const {
  if (n < 0 || n >= horizon()) throw std::out_of_range("structure map beyond the horizon");
  return sigmas_[static_cast<std::size_t>(n)];
}

ChainMap SymmetricSpectrum::iterated_sigma(int m, int r) const {
  if (r == 0) return ChainMap::identity(space(m));
  ChainMap g = sigma(m);
  for (int j = 1; j < r; ++j) g = sigma(m + j) * tensor(g, ChainMap::identity(k_));
  return g;
}

ChainMap SymmetricSpectrum::sigma_adjoint(int n) const { return adjoint_GU(sigma(n), space(n), k_); }

SymmetricSpectrum SymmetricSpectrum::truncate(int h) const {
  if (h > horizon()) throw std::out_of_range("truncate: horizon too large");
  return SymmetricSpectrum(k_, {levels_.begin(), levels_.begin() + h + 1},
                           {sigmas_.begin(), sigmas_.begin() + h});
}

bool SymmetricSpectrum::operator==(const SymmetricSpectrum& o) const {
  return k_ == o.k_ && levels_ == o.levels_ && sigmas_ == o.sigmas_;
}

SymSeq sequence_of(const SymmetricSpectrum& x) { return x.levels(); }

// -- SymMap -----------------------------------------------------------------

SymMap::SymMap(SymmetricSpectrum source, SymmetricSpectrum target, std::vector<ChainMap> comps)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.K() != target_.K()) throw ShapeError("symmetric map: different K");
  const int h = std::min(source_.horizon(), target_.horizon());
  if (static_cast<int>(comps.size()) < h + 1) {
    throw ShapeError("symmetric map: need components 0.." + std::to_string(h));
  }
  comps.resize(static_cast<std::size_t>(h) + 1);
  const ChainMap idk = ChainMap::identity(source_.K());
  for (int n = 0; n <= h; ++n) {
    const ChainMap& f = comps[static_cast<std::size_t>(n)];
    if (f.source() != source_.space(n) || f.target() != target_.space(n)) {
      throw ShapeError("symmetric map: component " + std::to_string(n) + " has the wrong shape");
    }
    if (!is_equivariant(f, source_.level(n), target_.level(n))) {
      throw ValidationError("symmetric map: component " + std::to_string(n) + " is not equivariant");
    }
    if (n < h && comps[static_cast<std::size_t>(n) + 1] * source_.sigma(n) !=
                     target_.sigma(n) * tensor(f, idk)) {
      throw ValidationError("symmetric map: structure square fails at level " + std::to_string(n));
    }
  }
  comps_ = std::move(comps);
}

SymMap SymMap::identity(const SymmetricSpectrum& x) {
  std::vector<ChainMap> comps;
  for (int n = 0; n <= x.horizon(); ++n) comps.push_back(ChainMap::identity(x.space(n)));
  return SymMap(x, x, comps);
}

SymMap SymMap::zero(const SymmetricSpectrum& s, const SymmetricSpectrum& t) {
  std::vector<ChainMap> comps;
  for (int n = 0; n <= std::min(s.horizon(), t.horizon()); ++n) {
    comps.push_back(ChainMap::zero(s.space(n), t.space(n)));
  }
  return SymMap(s, t, comps);
}

const ChainMap& SymMap::comp(int n) const {
  if (n < 0 || n > horizon()) throw std::out_of_range("symmetric map component beyond the horizon");
  return comps_[static_cast<std::size_t>(n)];
}

SymMap SymMap::operator*(const SymMap& f) const {
  if (f.target_ != source_) throw ShapeError("symmetric map composition: mismatch");
  std::vector<ChainMap> comps;
  for (int n = 0; n <= std::min(horizon(), f.horizon()); ++n) comps.push_back(comp(n) * f.comp(n));
  return SymMap(f.source_, target_, comps);
}

SymMap SymMap::operator+(const SymMap& o) const {
  if (o.source_ != source_ || o.target_ != target_) throw ShapeError("symmetric map sum: mismatch");
  std::vector<ChainMap> comps;
  for (int n = 0; n <= horizon(); ++n) comps.push_back(comp(n) + o.comp(n));
  return SymMap(source_, target_, comps);
}

SymMap SymMap::operator-(const SymMap& o) const { return *this + o.scaled(-1); }

SymMap SymMap::scaled(long long c) const {
  std::vector<ChainMap> comps;
  for (const auto& g : comps_) comps.push_back(g.scaled(c));
  return SymMap(source_, target_, comps);
}

bool SymMap::operator==(const SymMap& o) const {
  return source_ == o.source_ && target_ == o.target_ && comps_ == o.comps_;
}

bool SymMap::is_level_iso() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const ChainMap& f) { return is_iso(f); });
}

// -- Sym(K) -----------------------------------------------------------------

SymmetricSpectrum sym_K(const ChainComplex& k, int horizon) {
  std::vector<SymRep> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n <= horizon; ++n) {
    const ChainComplex kn = tensor_power(k, n);
    std::vector<ChainMap> gens;
    for (int i = 0; i + 1 < n; ++i) {
      gens.push_back(permute_factors(copies(k, static_cast<std::size_t>(n)), perm_transposition(n, i)));
    }
    levels.emplace_back(n, kn, gens);
    if (n < horizon) sigmas.push_back(ChainMap::identity(tensor_power(k, n + 1)));
  }
  return SymmetricSpectrum(k, levels, sigmas);
}

SymmetricSpectrum sym_K_bar(const ChainComplex& k, int horizon) {
  const SymmetricSpectrum s = sym_K(k, horizon);
  std::vector<SymRep> levels = s.levels();
  levels[0] = zero_rep(0, k.prime());
  std::vector<ChainMap> sigmas;
  for (int n = 0; n < horizon; ++n) {
    sigmas.push_back(n == 0 ? ChainMap::zero(tensor(levels[0].space(), k), levels[1].space())
                            : s.sigma(n));
  }
  return SymmetricSpectrum(k, levels, sigmas);
}

// -- SeqTensor --------------------------------------------------------------

SeqTensor::SeqTensor(SymSeq x, SymSeq y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.empty() || y_.empty()) throw ShapeError("tensor of empty symmetric sequences");
  const int h = static_cast<int>(std::min(x_.size(), y_.size())) - 1;
  const std::uint32_t p = x_[0].space().prime();
  blocks_.resize(static_cast<std::size_t>(h) + 1);
  for (int n = 0; n <= h; ++n) {
    auto& bl = blocks_[static_cast<std::size_t>(n)];
    for (int pp = 0; pp <= n; ++pp) {
      for (auto& a : subsets(n, pp)) bl.push_back({pp, std::move(a)});
    }
    std::vector<ChainComplex> parts;
    for (std::size_t b = 0; b < bl.size(); ++b) parts.push_back(part(n, b));
    const ChainComplex space = direct_sum_of(parts);
    std::vector<ChainMap> gens;
    for (int i = 0; i + 1 < n; ++i) {
      ChainMap g = ChainMap::zero(space, space);
      for (std::size_t b = 0; b < bl.size(); ++b) {
        if (parts[b].is_zero()) continue;
        const auto& sub = bl[b].subset;
        const int pp = bl[b].p;
        const int q = n - pp;
        const auto pos_i = std::find(sub.begin(), sub.end(), i);
        const auto pos_j = std::find(sub.begin(), sub.end(), i + 1);
        const bool in_i = pos_i != sub.end(), in_j = pos_j != sub.end();
        std::size_t to = b;
        ChainMap inner = ChainMap::identity(parts[b]);
        const ChainMap idx = ChainMap::identity(x_[static_cast<std::size_t>(pp)].space());
        const ChainMap idy = ChainMap::identity(y_[static_cast<std::size_t>(q)].space());
        if (in_i && in_j) {
          const int j = static_cast<int>(pos_i - sub.begin());
          inner = tensor(x_[static_cast<std::size_t>(pp)].gen(j), idy);
        } else if (!in_i && !in_j) {
          // Position of i among the complement letters.
          int j = 0;
          for (int v = 0; v < i; ++v) j += std::find(sub.begin(), sub.end(), v) == sub.end() ? 1 : 0;
          inner = tensor(idx, y_[static_cast<std::size_t>(q)].gen(j));
        } else {
          std::vector<int> moved = sub;
          for (int& v : moved) {
            if (v == i) v = i + 1;
            else if (v == i + 1) v = i;
          }
          std::sort(moved.begin(), moved.end());
          to = find_block(n, pp, moved);
        }
        g = g + sum_inclusion(space, parts, to) * inner * sum_projection(space, parts, b);
      }
      gens.push_back(g);
    }
    value_.emplace_back(n, space, gens);
  }
  (void)p;
}

std::size_t SeqTensor::find_block(int n, int p, const std::vector<int>& subset) const {
  const auto& bl = blocks(n);
  for (std::size_t b = 0; b < bl.size(); ++b) {
    if (bl[b].p == p && bl[b].subset == subset) return b;
  }
  throw std::out_of_range("SeqTensor: no such block");
}

std::size_t SeqTensor::front_block(int n, int p) const {
  return find_block(n, p, perm_identity(p));
}

ChainComplex SeqTensor::part(int n, std::size_t b) const {
  const auto& bl = blocks(n)[b];
  return tensor(x_[static_cast<std::size_t>(bl.p)].space(),
                y_[static_cast<std::size_t>(n - bl.p)].space());
}

ChainMap SeqTensor::inclusion(int n, std::size_t b) const {
  std::vector<ChainComplex> parts;
  for (std::size_t c = 0; c < blocks(n).size(); ++c) parts.push_back(part(n, c));
  return sum_inclusion(level(n).space(), parts, b);
}

ChainMap SeqTensor::projection(int n, std::size_t b) const {
  std::vector<ChainComplex> parts;
  for (std::size_t c = 0; c < blocks(n).size(); ++c) parts.push_back(part(n, c));
  return sum_projection(level(n).space(), parts, b);
}

ChainMap SeqTensor::induced(int n, const SymRep& z,
                            const std::function<ChainMap(int, int)>& phi) const {
  if (z.arity() != n) throw ShapeError("SeqTensor::induced: arity mismatch");
  std::vector<ChainComplex> parts;
  for (std::size_t c = 0; c < blocks(n).size(); ++c) parts.push_back(part(n, c));
  ChainMap out = ChainMap::zero(level(n).space(), z.space());
  for (std::size_t b = 0; b < parts.size(); ++b) {
    if (parts[b].is_zero()) continue;
    const auto& bl = blocks(n)[b];
    out = out + z.act(shuffle_perm(n, bl.subset)) * phi(bl.p, n - bl.p) *
                    sum_projection(level(n).space(), parts, b);
  }
  return out;
}

ChainMap SeqTensor::blockwise(int n, const SeqTensor& target,
                              const std::function<ChainMap(int, int)>& f) const {
  std::vector<ChainComplex> parts, tparts;
  for (std::size_t c = 0; c < blocks(n).size(); ++c) {
    parts.push_back(part(n, c));
    tparts.push_back(target.part(n, c));
  }
  ChainMap out = ChainMap::zero(level(n).space(), target.level(n).space());
  for (std::size_t b = 0; b < parts.size(); ++b) {
    if (parts[b].is_zero() || tparts[b].is_zero()) continue;
    const auto& bl = blocks(n)[b];
    out = out + sum_inclusion(target.level(n).space(), tparts, b) * f(bl.p, n - bl.p) *
                    sum_projection(level(n).space(), parts, b);
  }
  return out;
}

ChainMap SeqTensor::right_structure(int n, const SymmetricSpectrum& y) const {
  const ChainComplex& k = y.K();
  std::vector<ChainComplex> parts, nparts;
  for (std::size_t c = 0; c < blocks(n).size(); ++c) parts.push_back(part(n, c));
  for (std::size_t c = 0; c < blocks(n + 1).size(); ++c) nparts.push_back(part(n + 1, c));
  const ChainComplex src = tensor(level(n).space(), k);
  ChainMap out = ChainMap::zero(src, level(n + 1).space());
  const ChainMap idk = ChainMap::identity(k);
  for (std::size_t b = 0; b < parts.size(); ++b) {
    if (parts[b].is_zero()) continue;
    const auto& bl = blocks(n)[b];
    const int q = n - bl.p;
    const ChainComplex& xp = x_[static_cast<std::size_t>(bl.p)].space();
    const ChainComplex& yq = y_[static_cast<std::size_t>(q)].space();
    const std::size_t to = find_block(n + 1, bl.p, bl.subset);
    out = out + sum_inclusion(level(n + 1).space(), nparts, to) *
                    tensor(ChainMap::identity(xp), y.sigma(q)) * associator(xp, yq, k) *
                    tensor(sum_projection(level(n).space(), parts, b), idk);
  }
  return out;
}

// -- smash product ----------------------------------------------------------

ChainMap left_action(const SymmetricSpectrum& y, int r, int q) {
  const ChainComplex kr = tensor_power(y.K(), r);
  Perm chi(static_cast<std::size_t>(r + q));
  for (int j = 0; j < q; ++j) chi[static_cast<std::size_t>(j)] = r + j;
  for (int i = 0; i < r; ++i) chi[static_cast<std::size_t>(q + i)] = i;
  return y.level(r + q).act(chi) * y.iterated_sigma(q, r) * twist(kr, y.space(q));
}

SymSmash smash_data(const SymmetricSpectrum& x, const SymmetricSpectrum& y) {
  if (x.K() != y.K()) throw ShapeError("smash: different K");
  const ChainComplex& k = x.K();
  const int h = std::min(x.horizon(), y.horizon());
  const SymmetricSpectrum sym = sym_K(k, h);
  const SeqTensor t1(sequence_of(x), sequence_of(sym));
  const SeqTensor t2(t1.value(), sequence_of(y));
  const SeqTensor t0(sequence_of(x), sequence_of(y));

  std::vector<ChainMap> act;
  for (int a = 0; a <= h; ++a) {
    act.push_back(t1.induced(a, x.level(a), [&](int p, int r) { return x.iterated_sigma(p, r); }));
  }
  std::vector<Quotient> quotients;
  for (int n = 0; n <= h; ++n) {
    const SymRep& target = t0.level(n);
    const ChainMap m1 = t2.induced(n, target, [&](int a, int q) {
      return t0.inclusion(n, t0.front_block(n, a)) *
             tensor(act[static_cast<std::size_t>(a)], ChainMap::identity(y.space(q)));
    });
    const ChainMap m2 = t2.induced(n, target, [&](int a, int q) {
      const ChainComplex& yq = y.space(q);
      ChainMap out = ChainMap::zero(tensor(t1.level(a).space(), yq), target.space());
      for (std::size_t b = 0; b < t1.blocks(a).size(); ++b) {
        const auto& bl = t1.blocks(a)[b];
        const int r = a - bl.p;
        const ChainComplex& xp = x.space(bl.p);
        if (xp.is_zero()) continue;
        out = out + t0.inclusion(n, t0.find_block(n, bl.p, bl.subset)) *
                        tensor(ChainMap::identity(xp), left_action(y, r, q)) *
                        associator(xp, tensor_power(k, r), yq) *
                        tensor(t1.projection(a, b), ChainMap::identity(yq));
      }
      return out;
    });
    quotients.push_back(cokernel(m1 - m2));
  }
  std::vector<SymRep> levels;
  std::vector<ChainMap> sigmas, projections;
  for (int n = 0; n <= h; ++n) {
    const Quotient& q = quotients[static_cast<std::size_t>(n)];
    std::vector<ChainMap> gens;
    for (int i = 0; i + 1 < n; ++i) {
      gens.push_back(factor_through_surjection(q.projection * t0.level(n).gen(i), q.projection));
    }
    levels.emplace_back(n, q.complex, gens);
    projections.push_back(q.projection);
    if (n < h) {
      const Quotient& qn = quotients[static_cast<std::size_t>(n) + 1];
      sigmas.push_back(factor_through_surjection(qn.projection * t0.right_structure(n, y),
                                                 tensor(q.projection, ChainMap::identity(k))));
    }
  }
  return {SymmetricSpectrum(k, levels, sigmas), projections};
}

SymmetricSpectrum smash(const SymmetricSpectrum& x, const SymmetricSpectrum& y) {
  return smash_data(x, y).value;
}

SymMap smash_map(const SymMap& f, const SymMap& g) {
  const SymSmash a = smash_data(f.source(), g.source());
  const SymSmash b = smash_data(f.target(), g.target());
  const SeqTensor ta(sequence_of(f.source()), sequence_of(g.source()));
  const SeqTensor tb(sequence_of(f.target()), sequence_of(g.target()));
  std::vector<ChainMap> comps;
  for (int n = 0; n <= std::min(a.value.horizon(), b.value.horizon()); ++n) {
    const ChainMap lifted = ta.blockwise(n, tb, [&](int p, int q) { return tensor(f.comp(p), g.comp(q)); });
    comps.push_back(factor_through_surjection(b.projections[static_cast<std::size_t>(n)] * lifted,
                                              a.projections[static_cast<std::size_t>(n)]));
  }
  return SymMap(a.value, b.value, comps);
}

SymMap smash_unit_map(const SymmetricSpectrum& x) {
  const SymmetricSpectrum sym = sym_K(x.K(), x.horizon());
  const SymSmash sm = smash_data(sym, x);
  const SeqTensor t(sequence_of(sym), sequence_of(x));
  std::vector<ChainMap> comps;
  for (int n = 0; n <= x.horizon(); ++n) {
    const ChainMap m = t.induced(n, x.level(n), [&](int r, int q) { return left_action(x, r, q); });
    comps.push_back(factor_through_surjection(m, sm.projections[static_cast<std::size_t>(n)]));
  }
  return SymMap(sm.value, x, comps);
}

// -- free, evaluation, cofree -----------------------------------------------

SymRep induced_free(int n, const ChainComplex& a) {
  const auto perms = all_perms(n);
  const auto parts = copies(a, perms.size());
  const ChainComplex space = direct_sum_of(parts);
  std::vector<ChainMap> gens;
  for (int i = 0; i + 1 < n; ++i) {
    const Perm s = perm_transposition(n, i);
    ChainMap g = ChainMap::zero(space, space);
    for (std::size_t c = 0; c < perms.size(); ++c) {
      const std::size_t to = perm_rank(perm_compose(s, perms[c]));
      g = g + sum_inclusion(space, parts, to) * sum_projection(space, parts, c);
    }
    gens.push_back(g);
  }
  return SymRep(n, space, gens);
}

namespace {

SymSeq free_sequence(int n, const ChainComplex& a, int horizon) {
  SymSeq seq;
  for (int m = 0; m <= horizon; ++m) {
    seq.push_back(m == n ? induced_free(n, a) : zero_rep(m, a.prime()));
  }
  return seq;
}

SymmetricSpectrum spectrum_from_tensor(const SeqTensor& t, const SymmetricSpectrum& y) {
  std::vector<ChainMap> sigmas;
  for (int m = 0; m < t.horizon(); ++m) sigmas.push_back(t.right_structure(m, y));
  return SymmetricSpectrum(y.K(), t.value(), sigmas);
}

// Σ_n × a → X_n, (g, x) ↦ g·φ(x).
ChainMap free_adjoint_level(int n, const ChainMap& phi, const SymRep& xn) {
  const auto perms = all_perms(n);
  const auto parts = copies(phi.source(), perms.size());
  const ChainComplex space = direct_sum_of(parts);
  ChainMap out = ChainMap::zero(space, xn.space());
  for (std::size_t c = 0; c < perms.size(); ++c) {
    out = out + xn.act(perms[c]) * phi * sum_projection(space, parts, c);
  }
  return out;
}

ChainMap copies_of(const ChainMap& f, std::size_t count) {
  const auto sp = copies(f.source(), count), tp = copies(f.target(), count);
  const ChainComplex s = direct_sum_of(sp), t = direct_sum_of(tp);
  ChainMap out = ChainMap::zero(s, t);
  for (std::size_t c = 0; c < count; ++c) {
    out = out + sum_inclusion(t, tp, c) * f * sum_projection(s, sp, c);
  }
  return out;
}

}  // namespace

SymmetricSpectrum free_sym(int n, const ChainComplex& a, const ChainComplex& k, int horizon) {
  if (n < 0) throw std::invalid_argument("free_sym: negative level");
  const SymmetricSpectrum sym = sym_K(k, horizon);
  return spectrum_from_tensor(SeqTensor(free_sequence(n, a, horizon), sequence_of(sym)), sym);
}

const SymRep& eval_sym(int n, const SymmetricSpectrum& x) { return x.level(n); }

ChainMap free_sym_unit(int n, const ChainComplex& a) {
  const auto parts = copies(a, factorial(n));
  return sum_inclusion(direct_sum_of(parts), parts, 0);
}

SymMap free_sym_extension(int n, const ChainMap& phi, const SymmetricSpectrum& x) {
  const ChainComplex& k = x.K();
  const int h = x.horizon();
  if (phi.target() != x.space(n)) throw ShapeError("free_sym_extension: φ must land in X_n");
  const SymmetricSpectrum sym = sym_K(k, h);
  const SeqTensor t(free_sequence(n, phi.source(), h), sequence_of(sym));
  const SymmetricSpectrum fa = spectrum_from_tensor(t, sym);
  const ChainMap big = free_adjoint_level(n, phi, x.level(n));
  std::vector<ChainMap> comps;
  for (int m = 0; m <= h; ++m) {
    comps.push_back(t.induced(m, x.level(m), [&](int p, int r) {
      (void)p;
      return x.iterated_sigma(n, r) * tensor(big, ChainMap::identity(tensor_power(k, r)));
    }));
  }
  return SymMap(fa, x, comps);
}

SymMap free_sym_map(int n, const ChainMap& f, const ChainComplex& k, int horizon) {
  const SymmetricSpectrum sym = sym_K(k, horizon);
  const SeqTensor ta(free_sequence(n, f.source(), horizon), sequence_of(sym));
  const SeqTensor tb(free_sequence(n, f.target(), horizon), sequence_of(sym));
  const ChainMap big = copies_of(f, factorial(n));
  std::vector<ChainMap> comps;
  for (int m = 0; m <= horizon; ++m) {
    comps.push_back(ta.blockwise(m, tb, [&](int p, int r) {
      (void)p;
      return tensor(big, ChainMap::identity(tensor_power(k, r)));
    }));
  }
  return SymMap(spectrum_from_tensor(ta, sym), spectrum_from_tensor(tb, sym), comps);
}

namespace {

struct CofreeData {
  SymmetricSpectrum value;
  ChainComplex big;                // Map(Σ_n, a)
  std::vector<ChainMap> inclusion;  // fixed part → Hom(K^{n−m}, Map(Σ_n, a)), m ≤ n
};

CofreeData cofree_data(int n, const ChainComplex& a, const ChainComplex& k, int horizon) {
  require_one_dimensional(k);
  const std::uint32_t p = k.prime();
  const ChainComplex big = direct_sum_of(copies(a, factorial(n)));
  std::vector<ChainMap> rho;
  for (int i = 0; i + 1 < n; ++i) rho.push_back(coinduced_action(n, a, big, perm_transposition(n, i)));
  const long long eps = (k.top() % 2 == 0) ? 1 : -1;  // action of a transposition on K⊗K
  CofreeData out;
  out.big = big;
  std::vector<SymRep> levels;
  std::vector<ChainComplex> homs;
  for (int m = 0; m <= horizon; ++m) {
    if (m > n) {
      levels.push_back(zero_rep(m, p));
      continue;
    }
    const ChainComplex kj = tensor_power(k, n - m);
    const ChainComplex v = loops_U(big, kj);
    homs.push_back(v);
    std::vector<ChainMap> u;
    for (const auto& r : rho) u.push_back(loops_U(r, kj));
    ChainMap incl = ChainMap::identity(v);
    for (int i = m; i + 1 < n; ++i) {
      const ChainMap d = (u[static_cast<std::size_t>(i)] - ChainMap::scalar(v, eps)) * incl;
      incl = incl * kernel(d).inclusion;
    }
    std::vector<ChainMap> gens;
    for (int i = 0; i + 1 < m; ++i) {
      gens.push_back(factor_through_injection(u[static_cast<std::size_t>(i)] * incl, incl));
    }
    levels.emplace_back(m, incl.source(), gens);
    out.inclusion.push_back(incl);
  }
  std::vector<ChainMap> sigmas;
  for (int m = 0; m < horizon; ++m) {
    const ChainComplex src = tensor(levels[static_cast<std::size_t>(m)].space(), k);
    if (m >= n) {
      sigmas.push_back(ChainMap::zero(src, levels[static_cast<std::size_t>(m) + 1].space()));
      continue;
    }
    const int j = n - m;
    const ChainComplex& v = homs[static_cast<std::size_t>(m)];
    const ChainMap ev = counit_GU(big, tensor_power(k, j));
    const ChainMap sv = adjoint_GU(ev, tensor(v, k), tensor_power(k, j - 1));
    const ChainMap& im = out.inclusion[static_cast<std::size_t>(m)];
    const ChainMap& in = out.inclusion[static_cast<std::size_t>(m) + 1];
    sigmas.push_back(factor_through_injection(sv * tensor(im, ChainMap::identity(k)), in));
  }
  out.value = SymmetricSpectrum(k, levels, sigmas);
  return out;
}

}  // namespace

SymmetricSpectrum cofree_sym(int n, const ChainComplex& a, const ChainComplex& k, int horizon) {
  return cofree_data(n, a, k, horizon).value;
}

ChainMap cofree_sym_counit(int n, const ChainComplex& a) {
  const auto parts = copies(a, factorial(n));
  return sum_projection(direct_sum_of(parts), parts, 0);
}

SymMap cofree_sym_extension(int n, const ChainMap& psi, const SymmetricSpectrum& x) {
  const ChainComplex& k = x.K();
  const int h = x.horizon();
  if (psi.source() != x.space(n)) throw ShapeError("cofree_sym_extension: ψ must start at X_n");
  const CofreeData r = cofree_data(n, psi.target(), k, h);
  const auto perms = all_perms(n);
  const auto parts = copies(psi.target(), perms.size());
  ChainMap big = ChainMap::zero(x.space(n), r.big);
  for (std::size_t c = 0; c < perms.size(); ++c) {
    big = big + sum_inclusion(r.big, parts, c) * psi * x.level(n).act(perms[c]);
  }
  std::vector<ChainMap> comps;
  for (int m = 0; m <= h; ++m) {
    if (m > n) {
      comps.push_back(ChainMap::zero(x.space(m), r.value.space(m)));
      continue;
    }
    const ChainComplex kj = tensor_power(k, n - m);
    const ChainMap g = adjoint_GU(big * x.iterated_sigma(m, n - m), x.space(m), kj);
    comps.push_back(factor_through_injection(g, r.inclusion[static_cast<std::size_t>(m)]));
  }
  return SymMap(x, r.value, comps);
}

SymMap cofree_sym_map(int n, const ChainMap& f, const ChainComplex& k, int horizon) {
  const CofreeData s = cofree_data(n, f.source(), k, horizon);
  const CofreeData t = cofree_data(n, f.target(), k, horizon);
  const ChainMap big = copies_of(f, factorial(n));
  std::vector<ChainMap> comps;
  for (int m = 0; m <= horizon; ++m) {
    if (m > n) {
      comps.push_back(ChainMap::zero(s.value.space(m), t.value.space(m)));
      continue;
    }
    const ChainMap u = loops_U(big, tensor_power(k, n - m));
    comps.push_back(factor_through_injection(u * s.inclusion[static_cast<std::size_t>(m)],
                                             t.inclusion[static_cast<std::size_t>(m)]));
  }
  return SymMap(s.value, t.value, comps);
}

SymMap free_smash_comparison(int n, const ChainComplex& a, int m, const ChainComplex& b,
                             const ChainComplex& k, int horizon) {
  const SymmetricSpectrum x = free_sym(n, a, k, horizon), y = free_sym(m, b, k, horizon);
  const SymSmash sm = smash_data(x, y);
  const SeqTensor t0(sequence_of(x), sequence_of(y));
  const int top = n + m;
  if (top > horizon) throw std::out_of_range("free_smash_comparison: horizon below n + m");
  const ChainMap phi = sm.projections[static_cast<std::size_t>(top)] *
                       t0.inclusion(top, t0.front_block(top, n)) *
                       tensor(free_sym_unit(n, a), free_sym_unit(m, b));
  return free_sym_extension(top, phi, sm.value);
}

// -- latching and cofibrations ----------------------------------------------

namespace {

struct LatchingData {
  SymSmash smash;
  SeqTensor tensor;
};

LatchingData latching_data(int n, const SymmetricSpectrum& x) {
  const SymmetricSpectrum xt = x.truncate(n);
  const SymmetricSpectrum bar = sym_K_bar(x.K(), n);
  return {smash_data(xt, bar), SeqTensor(sequence_of(xt), sequence_of(bar))};
}

}  // namespace

Latching latching(int n, const SymmetricSpectrum& x) {
  const LatchingData d = latching_data(n, x);
  const ChainMap m = d.tensor.induced(n, x.level(n), [&](int p, int q) { return x.iterated_sigma(p, q); });
  return {d.smash.value.level(n),
          factor_through_surjection(m, d.smash.projections[static_cast<std::size_t>(n)])};
}

SymCorner sym_corner(int n, const SymMap& f) {
  const SymmetricSpectrum& x = f.source();
  const SymmetricSpectrum& y = f.target();
  const Latching lx = latching(n, x), ly = latching(n, y);
  const LatchingData dx = latching_data(n, x), dy = latching_data(n, y);
  const ChainMap lifted = dx.tensor.blockwise(n, dy.tensor, [&](int p, int q) {
    return tensor(f.comp(p), ChainMap::identity(dx.tensor.part(n, dx.tensor.find_block(n, p, perm_identity(p)))
                                                    .is_zero()
                                                ? ChainComplex::zero(x.prime())
                                                : tensor_power(x.K(), q)));
  });
  const ChainMap lf = factor_through_surjection(dy.smash.projections[static_cast<std::size_t>(n)] * lifted,
                                                dx.smash.projections[static_cast<std::size_t>(n)]);
  const Pushout po = pushout(lx.map, lf);
  std::vector<ChainMap> gens, cgens;
  for (int i = 0; i + 1 < n; ++i) {
    gens.push_back(induced_from_pushout(po, po.from_b * x.level(n).gen(i), po.from_c * ly.object.gen(i)));
  }
  const SymRep prep(n, po.complex, gens);
  const ChainMap corner = induced_from_pushout(po, f.comp(n), ly.map);
  const Quotient q = cokernel(corner);
  for (int i = 0; i + 1 < n; ++i) {
    cgens.push_back(factor_through_surjection(q.projection * y.level(n).gen(i), q.projection));
  }
  return {prep, corner, SymRep(n, q.complex, cgens)};
}

bool is_sym_cofibration(const SymMap& f) {
  for (int n = 0; n <= f.horizon(); ++n) {
    const SymCorner c = sym_corner(n, f);
    if (!is_injective(c.corner) || !is_degreewise_projective(c.cokernel)) return false;
  }
  return true;
}

// -- shifts -----------------------------------------------------------------

SymmetricSpectrum shift_s_sym(const SymmetricSpectrum& x) {
  if (x.horizon() < 1) throw std::out_of_range("shift of a single-level symmetric spectrum");
  std::vector<SymRep> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n < x.horizon(); ++n) {
    const SymRep& up = x.level(n + 1);
    std::vector<ChainMap> gens;
    for (int i = 0; i + 1 < n; ++i) gens.push_back(up.gen(i + 1));
    levels.emplace_back(n, up.space(), gens);
    if (n + 1 < x.horizon()) sigmas.push_back(x.sigma(n + 1));
  }
  return SymmetricSpectrum(x.K(), levels, sigmas);
}

SymMap shift_s_sym(const SymMap& f) {
  std::vector<ChainMap> comps;
  for (int n = 0; n < f.horizon(); ++n) comps.push_back(f.comp(n + 1));
  return SymMap(shift_s_sym(f.source()), shift_s_sym(f.target()), comps);
}

namespace {

// The coset representative r_j ∈ Σ_n: 0 ↦ j, increasing on 1..n-1.
Perm coset_rep(int n, int j) {
  Perm r{j};
  for (int v = 0; v < n; ++v) {
    if (v != j) r.push_back(v);
  }
  return r;
}

SymRep induced_up(const SymRep& below) {
  const int n = below.arity() + 1;
  const auto parts = copies(below.space(), static_cast<std::size_t>(n));
  const ChainComplex space = direct_sum_of(parts);
  std::vector<ChainMap> gens;
  for (int i = 0; i + 1 < n; ++i) {
    const Perm g = perm_transposition(n, i);
    ChainMap out = ChainMap::zero(space, space);
    for (int j = 0; j < n; ++j) {
      const int gj = g[static_cast<std::size_t>(j)];
      const Perm beta = perm_compose(perm_inverse(coset_rep(n, gj)), perm_compose(g, coset_rep(n, j)));
      Perm inner;
      for (int v = 1; v < n; ++v) inner.push_back(beta[static_cast<std::size_t>(v)] - 1);
      out = out + sum_inclusion(space, parts, static_cast<std::size_t>(gj)) * below.act(inner) *
                      sum_projection(space, parts, static_cast<std::size_t>(j));
    }
    gens.push_back(out);
  }
  return SymRep(n, space, gens);
}

}  // namespace

SymmetricSpectrum shift_t_sym(const SymmetricSpectrum& x) {
  const ChainComplex& k = x.K();
  const int h = x.horizon() + 1;
  std::vector<SymRep> levels{zero_rep(0, k.prime())};
  for (int n = 1; n <= h; ++n) levels.push_back(induced_up(x.level(n - 1)));
  std::vector<ChainMap> sigmas{ChainMap::zero(tensor(levels[0].space(), k), levels[1].space())};
  for (int n = 1; n < h; ++n) {
    const auto parts = copies(x.space(n - 1), static_cast<std::size_t>(n));
    const auto nparts = copies(x.space(n), static_cast<std::size_t>(n) + 1);
    const ChainComplex& src = levels[static_cast<std::size_t>(n)].space();
    const ChainComplex& tgt = levels[static_cast<std::size_t>(n) + 1].space();
    ChainMap s = ChainMap::zero(tensor(src, k), tgt);
    for (int j = 0; j < n; ++j) {
      s = s + sum_inclusion(tgt, nparts, static_cast<std::size_t>(j)) * x.sigma(n - 1) *
                  tensor(sum_projection(src, parts, static_cast<std::size_t>(j)), ChainMap::identity(k));
    }
    sigmas.push_back(s);
  }
  return SymmetricSpectrum(k, levels, sigmas);
}

SymMap shift_t_sym(const SymMap& f) {
  const SymmetricSpectrum s = shift_t_sym(f.source()), t = shift_t_sym(f.target());
  std::vector<ChainMap> comps{ChainMap::zero(s.space(0), t.space(0))};
  for (int n = 1; n <= f.horizon() + 1; ++n) {
    comps.push_back(copies_of(f.comp(n - 1), static_cast<std::size_t>(n)));
  }
  return SymMap(s, t, comps);
}

SymMap shift_sym_unit(const SymmetricSpectrum& x) {
  const SymmetricSpectrum stx = shift_s_sym(shift_t_sym(x));
  std::vector<ChainMap> comps;
  for (int n = 0; n <= x.horizon(); ++n) {
    const auto parts = copies(x.space(n), static_cast<std::size_t>(n) + 1);
    comps.push_back(sum_inclusion(stx.space(n), parts, 0));
  }
  return SymMap(x, stx, comps);
}

SymMap shift_sym_counit(const SymmetricSpectrum& x) {
  const SymmetricSpectrum tsx = shift_t_sym(shift_s_sym(x));
  std::vector<ChainMap> comps{ChainMap::zero(tsx.space(0), x.space(0))};
  for (int n = 1; n <= x.horizon(); ++n) {
    const auto parts = copies(x.space(n), static_cast<std::size_t>(n));
    ChainMap out = ChainMap::zero(tsx.space(n), x.space(n));
    for (int j = 0; j < n; ++j) {
      out = out + x.level(n).act(coset_rep(n, j)) *
                      sum_projection(tsx.space(n), parts, static_cast<std::size_t>(j));
    }
    comps.push_back(out);
  }
  return SymMap(tsx, x, comps);
}

AdjunctionReport sym_adjunction_check(AdjunctionKind kind,
                                      const std::vector<SymAdjunctionSample>& samples) {
  AdjunctionReport report;
  auto fail = [&](std::size_t i, const std::string& what) {
    report.failures.push_back("sample " + std::to_string(i) + ": " + what);
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const ChainComplex& k = s.x.K();
    const int h = s.x.horizon();
    switch (kind) {
      case AdjunctionKind::FreeEval: {
        const SymmetricSpectrum fa = free_sym(s.n, s.a, k, h);
        const SymMap f_eta = free_sym_map(s.n, free_sym_unit(s.n, s.a), k, h);
        const SymMap eps_f = free_sym_extension(s.n, ChainMap::identity(fa.space(s.n)), fa);
        if (eps_f * f_eta != SymMap::identity(fa)) fail(i, "ε_F ∘ Fη != id");
        const SymMap eps_x = free_sym_extension(s.n, ChainMap::identity(s.x.space(s.n)), s.x);
        if (!(eps_x.comp(s.n) * free_sym_unit(s.n, s.x.space(s.n))).is_identity()) {
          fail(i, "Ev(ε) ∘ η_Ev != id");
        }
        break;
      }
      case AdjunctionKind::EvalCofree: {
        const SymMap eta_x = cofree_sym_extension(s.n, ChainMap::identity(s.x.space(s.n)), s.x);
        if (!(cofree_sym_counit(s.n, s.x.space(s.n)) * eta_x.comp(s.n)).is_identity()) {
          fail(i, "ε_Ev ∘ Ev(η) != id");
        }
        const SymmetricSpectrum ra = cofree_sym(s.n, s.a, k, h);
        const SymMap eta_r = cofree_sym_extension(s.n, ChainMap::identity(ra.space(s.n)), ra);
        const SymMap r_eps = cofree_sym_map(s.n, cofree_sym_counit(s.n, s.a), k, h);
        if (r_eps * eta_r != SymMap::identity(ra)) fail(i, "R(ε) ∘ η_R != id");
        break;
      }
      case AdjunctionKind::ShiftTS: {
        const SymmetricSpectrum tx = shift_t_sym(s.x);
        if (shift_sym_counit(tx) * shift_t_sym(shift_sym_unit(s.x)) != SymMap::identity(tx)) {
          fail(i, "ε_t ∘ tη != id");
        }
        const SymmetricSpectrum sx = shift_s_sym(s.x);
        if (shift_s_sym(shift_sym_counit(s.x)) * shift_sym_unit(sx) != SymMap::identity(sx)) {
          fail(i, "sε ∘ η_s != id");
        }
        break;
      }
    }
    ++report.checked;
  }
  return report;
}

// -- stable notions ---------------------------------------------------------

bool is_omega_spectrum(const SymmetricSpectrum& x, int max_level) {
  for (int n = 0; n <= std::min(max_level, x.horizon() - 1); ++n) {
    if (!is_quasi_iso(x.sigma_adjoint(n))) return false;
  }
  return true;
}

SymMap sym_map_s_n(int n, const ChainComplex& a, const ChainComplex& k, int horizon) {
  if (horizon < n + 1) throw std::out_of_range("sym_map_s_n: horizon below n + 1");
  const SymmetricSpectrum sym = sym_K(k, horizon);
  const SeqTensor t(free_sequence(n, a, horizon), sequence_of(sym));
  const SymmetricSpectrum fa = spectrum_from_tensor(t, sym);
  const ChainMap phi = t.inclusion(n + 1, t.front_block(n + 1, n)) *
                       tensor(free_sym_unit(n, a), ChainMap::identity(k));
  return free_sym_extension(n + 1, phi, fa);
}

StablePi naive_pi(const SymmetricSpectrum& x, int k) {
  const int h = x.horizon();
  if (h < 1) throw std::invalid_argument("naive_pi needs at least two levels");
  const int d = x.suspension_degree();
  const int n0 = h - 1;
  const int deg_n = k + d * n0, deg_next = k + d * h;
  const std::size_t here = homology(x.space(n0), deg_n);
  const std::size_t next = homology(x.space(h), deg_next);
  const std::size_t through = deg_next < 0 ? 0 : induced_rank(x.sigma(n0), deg_next);
  if (here != next || through != here) {
    throw UnstableColimit("naive_pi: colimit for k = " + std::to_string(k) +
                          " not stable by level " + std::to_string(h));
  }
  return {here, n0};
}

// -- constructions ----------------------------------------------------------

SymPushout pushout_sym(const SymMap& f, const SymMap& g) {
  if (f.source() != g.source()) throw ShapeError("pushout_sym: sources differ");
  const ChainComplex& k = f.source().K();
  const SymmetricSpectrum& b = f.target();
  const SymmetricSpectrum& c = g.target();
  const int h = std::min(f.horizon(), g.horizon());
  std::vector<Pushout> pos;
  std::vector<SymRep> levels;
  for (int n = 0; n <= h; ++n) {
    pos.push_back(pushout(f.comp(n), g.comp(n)));
    const Pushout& po = pos.back();
    std::vector<ChainMap> gens;
    for (int i = 0; i + 1 < n; ++i) {
      gens.push_back(induced_from_pushout(po, po.from_b * b.level(n).gen(i), po.from_c * c.level(n).gen(i)));
    }
    levels.emplace_back(n, po.complex, gens);
  }
  std::vector<ChainMap> sigmas;
  for (int n = 0; n < h; ++n) {
    const DirectSum ds = direct_sum(b.space(n), c.space(n));
    const ChainMap q = copair(ds, pos[n].from_b, pos[n].from_c);
    const DirectSum dk = direct_sum(tensor(b.space(n), k), tensor(c.space(n), k));
    const ChainMap m = copair(dk, pos[n + 1].from_b * b.sigma(n), pos[n + 1].from_c * c.sigma(n));
    sigmas.push_back(factor_through_surjection(m, tensor(q, ChainMap::identity(k))));
  }
  const SymmetricSpectrum p(k, levels, sigmas);
  std::vector<ChainMap> fb, fc;
  for (int n = 0; n <= h; ++n) {
    fb.push_back(pos[n].from_b);
    fc.push_back(pos[n].from_c);
  }
  return {p, SymMap(b, p, fb), SymMap(c, p, fc)};
}

SymmetricSpectrum apply_functor_levelwise(const BaseFunctor& phi, const SymmetricSpectrum& x) {
  const ChainComplex& k = x.K();
  const ChainMap idk = ChainMap::identity(k);
  std::vector<SymRep> levels;
  std::vector<ChainMap> sigmas;
  for (int n = 0; n <= x.horizon(); ++n) {
    const ChainComplex xn = x.space(n);
    std::vector<ChainMap> gens;
    for (int i = 0; i + 1 < n; ++i) {
      const ChainMap& g = x.level(n).gen(i);
      if (phi.tau(xn) * tensor(phi.on_map(g), idk) != phi.on_map(tensor(g, idk)) * phi.tau(xn)) {
        throw ValidationError("apply_functor_levelwise: comparison not natural at level " +
                              std::to_string(n));
      }
      gens.push_back(phi.on_map(g));
    }
    levels.emplace_back(n, phi.on_object(xn), gens);
    if (n < x.horizon()) {
      const ChainMap& s = x.sigma(n);
      if (phi.tau(x.space(n + 1)) * tensor(phi.on_map(s), idk) !=
          phi.on_map(tensor(s, idk)) * phi.tau(s.source())) {
        throw ValidationError("apply_functor_levelwise: comparison not natural along σ_" +
                              std::to_string(n));
      }
      sigmas.push_back(phi.on_map(s) * phi.tau(xn));
    }
  }
  return SymmetricSpectrum(k, levels, sigmas);
}

BaseFunctor tensor_functor(const ChainComplex& a, const ChainComplex& k) {
  BaseFunctor f;
  f.on_object = [a](const ChainComplex& c) { return tensor(c, a); };
  f.on_map = [a](const ChainMap& g) { return tensor(g, ChainMap::identity(a)); };
  f.tau = [a, k](const ChainComplex& c) {
    return associator_inverse(c, k, a) * tensor(ChainMap::identity(c), twist(a, k)) *
           associator(c, a, k);
  };
  return f;
}

SymmetricSpectrum tensor_with(const SymmetricSpectrum& x, const ChainComplex& a) {
  return apply_functor_levelwise(tensor_functor(a, x.K()), x);
}

SymMap tensor_with(const SymMap& f, const ChainComplex& a) {
  std::vector<ChainMap> comps;
  for (const auto& c : f.comps()) comps.push_back(tensor(c, ChainMap::identity(a)));
  return SymMap(tensor_with(f.source(), a), tensor_with(f.target(), a), comps);
}

ChainMap pushout_product(const ChainMap& f, const ChainMap& g) {
  const Pushout po = pushout(tensor(f, ChainMap::identity(g.source())),
                             tensor(ChainMap::identity(f.source()), g));
  return induced_from_pushout(po, tensor(ChainMap::identity(f.target()), g),
                              tensor(f, ChainMap::identity(g.target())));
}

SymMap pushout_product(const SymMap& f, const ChainMap& g) {
  const SymmetricSpectrum& x = f.source();
  const SymmetricSpectrum& y = f.target();
  const SymMap u = tensor_with(f, g.source());
  std::vector<ChainMap> vc;
  for (int n = 0; n <= x.horizon(); ++n) vc.push_back(tensor(ChainMap::identity(x.space(n)), g));
  const SymMap v(tensor_with(x, g.source()), tensor_with(x, g.target()), vc);
  const SymPushout po = pushout_sym(u, v);
  const SymmetricSpectrum yd = tensor_with(y, g.target());
  std::vector<ChainMap> comps;
  for (int n = 0; n <= po.value.horizon(); ++n) {
    const Pushout lp = pushout(u.comp(n), v.comp(n));
    comps.push_back(induced_from_pushout(lp, tensor(ChainMap::identity(y.space(n)), g),
                                         tensor(f.comp(n), ChainMap::identity(g.target()))));
  }
  return SymMap(po.value, yd, comps);
}

std::optional<SymMap> has_lift_sym(const SymMap& i, const SymMap& p, const SymMap& f,
                                   const SymMap& g) {
  const SymmetricSpectrum& b = i.target();
  const SymmetricSpectrum& x = p.source();
  if (f.source() != i.source() || f.target() != x || g.source() != b || g.target() != p.target()) {
    throw ShapeError("has_lift_sym: square shapes do not match");
  }
  const std::uint32_t pr = b.prime();
  const int d = b.suspension_degree();
  const int h = std::min({i.horizon(), p.horizon(), f.horizon(), g.horizon()});
  LinearSystem sys(pr);
  std::vector<std::vector<std::size_t>> u(static_cast<std::size_t>(h) + 1);
  for (int m = 0; m <= h; ++m) {
    const int top = std::max(b.space(m).top(), x.space(m).top());
    for (int t = 0; t <= top; ++t) {
      u[m].push_back(sys.add_unknown(x.space(m).dim(t), b.space(m).dim(t)));
    }
  }
  auto unknown = [&](int m, int t) -> std::optional<std::size_t> {
    if (t < 0 || t >= static_cast<int>(u[m].size())) return std::nullopt;
    return u[m][t];
  };
  for (int m = 0; m <= h; ++m) {
    const ChainComplex& bm = b.space(m);
    const ChainComplex& xm = x.space(m);
    for (int t = 0; t < static_cast<int>(u[m].size()); ++t) {
      const std::size_t v = u[m][t];
      const std::size_t bd = bm.dim(t), xd = xm.dim(t);
      sys.add_equation({{Matrix::identity(pr, xd), v, i.comp(m).mat(t)}}, f.comp(m).mat(t));
      sys.add_equation({{p.comp(m).mat(t), v, Matrix::identity(pr, bd)}}, g.comp(m).mat(t));
      if (t >= 1) {
        sys.add_equation({{xm.diff(t), v, Matrix::identity(pr, bd)},
                          {Matrix::scalar(pr, xm.dim(t - 1), -1), u[m][t - 1], bm.diff(t)}},
                         Matrix(pr, xm.dim(t - 1), bd));
      }
      for (int s = 0; s + 1 < m; ++s) {
        sys.add_equation({{Matrix::identity(pr, xd), v, b.level(m).gen(s).mat(t)},
                          {x.level(m).gen(s).mat(t).scaled(-1), v, Matrix::identity(pr, bd)}},
                         Matrix(pr, xd, bd));
      }
    }
    if (m < h) {
      const ChainComplex bk = tensor(bm, b.K());
      const ChainComplex& bn = b.space(m + 1);
      const ChainComplex& xn = x.space(m + 1);
      for (int t = 0; t <= std::max(bn.top(), xn.top()); ++t) {
        std::vector<LinearSystem::Term> terms;
        if (auto v = unknown(m + 1, t)) {
          terms.push_back({Matrix::identity(pr, xn.dim(t)), *v, b.sigma(m).mat(t)});
        }
        if (auto v = unknown(m, t - d)) {
          terms.push_back({x.sigma(m).mat(t).scaled(-1), *v, Matrix::identity(pr, bk.dim(t))});
        }
        if (!terms.empty()) sys.add_equation(terms, Matrix(pr, xn.dim(t), bk.dim(t)));
      }
    }
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  std::vector<ChainMap> comps;
  for (int m = 0; m <= h; ++m) {
    std::vector<Matrix> mats;
    for (auto v : u[m]) mats.push_back((*sol)[v]);
    comps.emplace_back(b.space(m), x.space(m), mats);
  }
  SymMap lift(b, x, comps);
  if (lift * i != f || p * lift != g) {
    throw ValidationError("symmetric lift failed re-validation");
  }
  return lift;
}

SymmetricSpectrum random_sym_spectrum(const ChainComplex& k, std::mt19937_64& rng, int horizon,
                                      const RandomSizes& sizes) {
  const ChainComplex a = random_complex(k.prime(), rng, sizes);
  const int top = std::min(2, horizon);
  const int n = std::uniform_int_distribution<int>(0, top)(rng);
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return free_sym(n, a, k, horizon);
    case 1:
      return cofree_sym(n, a, k, horizon);
    case 2:
      return horizon >= 1 ? shift_t_sym(free_sym(std::min(n, horizon - 1), a, k, horizon - 1))
                          : free_sym(0, a, k, horizon);
    default:
      return tensor_with(free_sym(std::min(n, 1), ChainComplex::unit(k.prime()), k, horizon), a);
  }
}

}  // namespace stab
