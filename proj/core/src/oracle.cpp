#include "stab/oracle.hpp"

#include <functional>
#include <stdexcept>

namespace stab {
namespace {

// An unknown chain map, one matrix per degree, constrained to commute with d.
struct MapVar {
  ChainComplex src, tgt;
  std::vector<std::size_t> ids;
};

MapVar add_map_var(LinearSystem& sys, const ChainComplex& s, const ChainComplex& t) {
  MapVar v{s, t, {}};
  const int top = std::max(s.top(), t.top());
  for (int n = 0; n <= top; ++n) v.ids.push_back(sys.add_unknown(t.dim(n), s.dim(n)));
  const std::uint32_t p = s.prime();
  for (int n = 1; n <= top; ++n) {
    if (t.dim(n - 1) == 0 || s.dim(n) == 0) continue;
    sys.add_equation({{t.diff(n), v.ids[static_cast<std::size_t>(n)], Matrix::identity(p, s.dim(n))},
                      {Matrix::scalar(p, t.dim(n - 1), -1), v.ids[static_cast<std::size_t>(n) - 1],
                       s.diff(n)}},
                     Matrix(p, t.dim(n - 1), s.dim(n)));
  }
  return v;
}

// left ∘ (var ⊗ K^{shift}) ∘ right, where a shifted var is tensored with the
// one-dimensional K and so has the matrix of var in degree t − |K|.
struct Term {
  ChainMap left;
  const MapVar* var;
  ChainMap right;
  bool shifted = false;
};

// Σ terms = 0.
void add_relation(LinearSystem& sys, const std::vector<Term>& terms, int d) {
  const ChainComplex& z = terms.front().left.target();
  const ChainComplex& w = terms.front().right.source();
  const std::uint32_t p = z.prime();
  for (int t = 0; t <= std::max(z.top(), w.top()); ++t) {
    if (z.dim(t) == 0 || w.dim(t) == 0) continue;
    std::vector<LinearSystem::Term> row;
    for (const auto& term : terms) {
      const int u = term.shifted ? t - d : t;
      if (u < 0 || u >= static_cast<int>(term.var->ids.size())) continue;
      row.push_back({term.left.mat(t), term.var->ids[static_cast<std::size_t>(u)], term.right.mat(t)});
    }
    if (!row.empty()) sys.add_equation(row, Matrix(p, z.dim(t), w.dim(t)));
  }
}

ChainMap value_of(const MapVar& v, const std::vector<Matrix>& sol) {
  std::vector<Matrix> mats;
  for (auto id : v.ids) mats.push_back(sol[id]);
  return ChainMap(v.src, v.tgt, mats);
}

ChainMap id(const ChainComplex& c) { return ChainMap::identity(c); }

// Visit every element of an affine solution space over F_p.
void for_each_solution(const LinearSystem::SolutionSpace& space, std::uint32_t p,
                       const std::function<void(const std::vector<Matrix>&)>& visit) {
  const std::size_t h = space.homogeneous.size();
  if (h > 16) throw std::length_error("solution space too large to enumerate");
  std::vector<std::uint32_t> coeff(h, 0);
  while (true) {
    std::vector<Matrix> x = space.particular;
    for (std::size_t i = 0; i < h; ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t u = 0; u < x.size(); ++u) x[u] = x[u] + space.homogeneous[i][u].scaled(coeff[i]);
    }
    visit(x);
    std::size_t i = 0;
    while (i < h && ++coeff[i] == p) coeff[i++] = 0;
    if (i == h) break;
  }
}

std::vector<ChainMap> all_chain_maps(const ChainComplex& s, const ChainComplex& t) {
  LinearSystem sys(s.prime());
  const MapVar v = add_map_var(sys, s, t);
  std::vector<ChainMap> out;
  if (auto space = sys.solution_space()) {
    for_each_solution(*space, s.prime(), [&](const std::vector<Matrix>& x) { out.push_back(value_of(v, x)); });
  }
  return out;
}

ChainMap swap_last_two(const ChainComplex& x, const ChainComplex& k) {
  return associator_inverse(x, k, k) * tensor(id(x), twist(k, k)) * associator(x, k, k);
}

// -- the lifting problems ---------------------------------------------------

struct LevelData {
  std::optional<ChainMap> sx, sy;
  ChainMap u, v;
};

// The homogeneous space of (σ_X, σ_Y, u_m, v_m) making a square against a
// level-m test fibration p_m : X_m → Y_m. Actions are ignored when the
// representations are null.
std::vector<LevelData> level_squares(const ChainComplex& k, const ChainComplex& am,
                                     const ChainComplex& bm, const ChainComplex* bprev,
                                     const ChainMap* sigma_a, const ChainMap* sigma_b,
                                     const ChainMap& f_m, const ChainMap* f_prev,
                                     const ChainMap& p_m,
                                     const std::function<void(LinearSystem&, const MapVar*,
                                                              const MapVar*, const MapVar&,
                                                              const MapVar&)>& extra) {
  const int d = k.top();
  const ChainComplex& xm = p_m.source();
  const ChainComplex& ym = p_m.target();
  LinearSystem sys(k.prime());
  std::optional<MapVar> sx, sy;
  if (bprev) {
    const ChainComplex bk = tensor(*bprev, k);
    sx = add_map_var(sys, bk, xm);
    sy = add_map_var(sys, bk, ym);
  }
  const MapVar u = add_map_var(sys, am, xm);
  const MapVar v = add_map_var(sys, bm, ym);
  if (bprev) {
    const ChainComplex bk = tensor(*bprev, k);
    add_relation(sys, {{p_m, &*sx, id(bk)}, {id(ym).scaled(-1), &*sy, id(bk)}}, d);
    add_relation(sys, {{id(xm), &u, *sigma_a}, {id(xm).scaled(-1), &*sx, tensor(*f_prev, id(k))}}, d);
    add_relation(sys, {{id(ym), &v, *sigma_b}, {id(ym).scaled(-1), &*sy, id(bk)}}, d);
  }
  add_relation(sys, {{p_m, &u, id(am)}, {id(ym).scaled(-1), &v, f_m}}, d);
  extra(sys, sx ? &*sx : nullptr, sy ? &*sy : nullptr, u, v);
  std::vector<LevelData> out;
  const auto space = sys.solution_space();
  if (!space) return out;
  for (const auto& h : space->homogeneous) {
    LevelData data{std::nullopt, std::nullopt, value_of(u, h), value_of(v, h)};
    if (sx) {
      data.sx = value_of(*sx, h);
      data.sy = value_of(*sy, h);
    }
    out.push_back(data);
  }
  return out;
}

std::string square_name(int m, const std::string& family, std::size_t i) {
  return "level " + std::to_string(m) + ", " + family + ", basis square " + std::to_string(i);
}

// -- spectra ----------------------------------------------------------------

Spectrum spliced(const Spectrum& b, int m, const ChainComplex& top, const std::optional<ChainMap>& s) {
  const ChainComplex& k = b.K();
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> sigmas;
  for (int j = 0; j < m; ++j) levels.push_back(b.level(j));
  for (int j = 0; j + 1 < m; ++j) sigmas.push_back(b.sigma(j));
  if (s) sigmas.push_back(*s);
  levels.push_back(top);
  const ChainComplex zero = ChainComplex::zero(k.prime());
  sigmas.push_back(ChainMap::zero(tensor(top, k), zero));
  levels.push_back(zero);
  return Spectrum(k, levels, sigmas);
}

// Components 0..top of a map that is `below(j)` for j < m, `at` at m and zero above.
SpectrumMap spliced_map(const Spectrum& s, const Spectrum& t, int m,
                        const std::function<ChainMap(int)>& below, const ChainMap& at) {
  const int top = std::max({s.tail_index(), t.tail_index(), m + 1});
  std::vector<ChainMap> comps;
  for (int j = 0; j <= top; ++j) {
    if (j < m) comps.push_back(below(j));
    else if (j == m) comps.push_back(at);
    else comps.push_back(ChainMap::zero(s.level(j), t.level(j)));
  }
  return SpectrumMap(s, t, comps);
}

bool bf_family(const SpectrumMap& f, int m, const ChainMap& p_m, const std::string& family,
               LiftingVerdict& verdict) {
  const Spectrum& a = f.source();
  const Spectrum& b = f.target();
  const ChainComplex& k = a.K();
  std::optional<ChainComplex> bprev;
  std::optional<ChainMap> sa, sb, fprev;
  if (m > 0) {
    bprev = b.level(m - 1);
    sa = a.sigma(m - 1);
    sb = b.sigma(m - 1);
    fprev = f.comp(m - 1);
  }
  const auto squares = level_squares(
      k, a.level(m), b.level(m), bprev ? &*bprev : nullptr, sa ? &*sa : nullptr,
      sb ? &*sb : nullptr, f.comp(m), fprev ? &*fprev : nullptr, p_m,
      [](LinearSystem&, const MapVar*, const MapVar*, const MapVar&, const MapVar&) {});
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const LevelData& sq = squares[i];
    const Spectrum x = spliced(b, m, p_m.source(), sq.sx);
    const Spectrum y = spliced(b, m, p_m.target(), sq.sy);
    const SpectrumMap p = spliced_map(x, y, m, [&](int j) { return id(b.level(j)); }, p_m);
    const SpectrumMap u = spliced_map(a, x, m, [&](int j) { return f.comp(j); }, sq.u);
    const SpectrumMap v = spliced_map(b, y, m, [&](int j) { return id(b.level(j)); }, sq.v);
    ++verdict.squares;
    if (!has_lift(f, p, u, v)) {
      verdict.lifts = false;
      verdict.obstruction = square_name(m, family, i);
      return false;
    }
  }
  return true;
}

int relevant_degree(const ChainComplex& am, const ChainComplex& bm, const ChainComplex* bprev, int d) {
  int top = std::max(am.top(), bm.top());
  if (bprev) top = std::max(top, bprev->top() + d);
  return top;
}

// -- symmetric spectra ------------------------------------------------------

SymRep zero_rep(int n, std::uint32_t p) { return SymRep::trivial(n, ChainComplex::zero(p)); }

SymmetricSpectrum spliced_sym(const SymmetricSpectrum& b, int m, int horizon, const SymRep& top,
                              const std::optional<ChainMap>& s) {
  const ChainComplex& k = b.K();
  std::vector<SymRep> levels;
  std::vector<ChainMap> sigmas;
  for (int j = 0; j < m; ++j) levels.push_back(b.level(j));
  for (int j = 0; j + 1 < m; ++j) sigmas.push_back(b.sigma(j));
  if (s) sigmas.push_back(*s);
  levels.push_back(top);
  for (int j = m + 1; j <= horizon; ++j) {
    levels.push_back(zero_rep(j, k.prime()));
    sigmas.push_back(ChainMap::zero(tensor(levels[static_cast<std::size_t>(j) - 1].space(), k),
                                    levels.back().space()));
  }
  return SymmetricSpectrum(k, levels, sigmas);
}

SymMap spliced_sym_map(const SymmetricSpectrum& s, const SymmetricSpectrum& t, int m,
                       const std::function<ChainMap(int)>& below, const ChainMap& at) {
  const int h = std::min(s.horizon(), t.horizon());
  std::vector<ChainMap> comps;
  for (int j = 0; j <= h; ++j) {
    if (j < m) comps.push_back(below(j));
    else if (j == m) comps.push_back(at);
    else comps.push_back(ChainMap::zero(s.space(j), t.space(j)));
  }
  return SymMap(s, t, comps);
}

struct SymFibration {
  std::string family;
  SymRep x, y;
  ChainMap p;
};

// The equivariance constraints on an unknown map between representations.
void equivariant(LinearSystem& sys, const MapVar& var, const SymRep& s, const SymRep& t, int d) {
  for (int i = 0; i + 1 < s.arity(); ++i) {
    add_relation(sys, {{id(t.space()), &var, s.gen(i)}, {t.gen(i).scaled(-1), &var, id(s.space())}}, d);
  }
}

// σ : B_{m−1} ⊗ K → Z must commute with Σ_{m−1} and satisfy the Σ_2 condition
// on the two newest letters.
void structure_constraints(LinearSystem& sys, const MapVar& var, const SymmetricSpectrum& b, int m,
                           const SymRep& z) {
  const ChainComplex& k = b.K();
  const int d = k.top();
  const SymRep& prev = b.level(m - 1);
  for (int i = 0; i + 1 < m - 1; ++i) {
    add_relation(sys, {{id(z.space()), &var, tensor(prev.gen(i), id(k))},
                       {z.gen(i).scaled(-1), &var, id(tensor(prev.space(), k))}},
                 d);
  }
  if (m >= 2) {
    const ChainMap lower = tensor(b.sigma(m - 2), id(k));
    const ChainMap swap = swap_last_two(b.space(m - 2), k);
    add_relation(sys, {{id(z.space()), &var, lower * swap}, {z.gen(m - 2).scaled(-1), &var, lower}}, d);
  }
}

bool sym_family(const SymMap& f, int m, const SymFibration& fib, LiftingVerdict& verdict) {
  const SymmetricSpectrum& a = f.source();
  const SymmetricSpectrum& b = f.target();
  const ChainComplex& k = a.K();
  const int d = k.top();
  const int horizon = f.horizon();
  std::optional<ChainComplex> bprev;
  std::optional<ChainMap> sa, sb, fprev;
  if (m > 0) {
    bprev = b.space(m - 1);
    sa = a.sigma(m - 1);
    sb = b.sigma(m - 1);
    fprev = f.comp(m - 1);
  }
  const auto squares = level_squares(
      k, a.space(m), b.space(m), bprev ? &*bprev : nullptr, sa ? &*sa : nullptr,
      sb ? &*sb : nullptr, f.comp(m), fprev ? &*fprev : nullptr, fib.p,
      [&](LinearSystem& sys, const MapVar* sx, const MapVar* sy, const MapVar& u, const MapVar& v) {
        equivariant(sys, u, a.level(m), fib.x, d);
        equivariant(sys, v, b.level(m), fib.y, d);
        if (sx) {
          structure_constraints(sys, *sx, b, m, fib.x);
          structure_constraints(sys, *sy, b, m, fib.y);
        }
      });
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const LevelData& sq = squares[i];
    const SymmetricSpectrum x = spliced_sym(b, m, horizon, fib.x, sq.sx);
    const SymmetricSpectrum y = spliced_sym(b, m, horizon, fib.y, sq.sy);
    const SymMap p = spliced_sym_map(x, y, m, [&](int j) { return id(b.space(j)); }, fib.p);
    const SymMap u = spliced_sym_map(a, x, m, [&](int j) { return f.comp(j); }, sq.u);
    const SymMap v = spliced_sym_map(b, y, m, [&](int j) { return id(b.space(j)); }, sq.v);
    ++verdict.squares;
    if (!has_lift_sym(f, p, u, v)) {
      verdict.lifts = false;
      verdict.obstruction = square_name(m, fib.family, i);
      return false;
    }
  }
  return true;
}

// W_k: F_p in degree k+1 (trivial action) hitting the norm element of
// F_p[Σ_2] in degree k; over F_2 the augmentation W_k → S^k is a surjective
// quasi-isomorphism that has no equivariant section.
SymFibration w_family(std::uint32_t p, int k) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(k) + 2, 0);
  dims[static_cast<std::size_t>(k)] = 2;
  dims[static_cast<std::size_t>(k) + 1] = 1;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= k + 1; ++n) {
    diffs.push_back(n == k + 1 ? Matrix::from_rows(p, {{1}, {1}})
                               : Matrix(p, n == 0 ? 0 : dims[static_cast<std::size_t>(n) - 1],
                                        dims[static_cast<std::size_t>(n)]));
  }
  const ChainComplex w(p, dims, diffs);
  std::vector<Matrix> swap, aug;
  for (int n = 0; n <= k + 1; ++n) {
    if (n == k) {
      swap.push_back(Matrix::from_rows(p, {{0, 1}, {1, 0}}));
      aug.push_back(Matrix::from_rows(p, {{1, 1}}));
    } else {
      swap.push_back(Matrix::identity(p, w.dim(n)));
      aug.push_back(Matrix(p, n == k ? 1 : 0, w.dim(n)));
    }
  }
  const ChainComplex s = ChainComplex::sphere(p, k);
  return {"W_" + std::to_string(k) + " -> S^" + std::to_string(k), SymRep(2, w, {ChainMap(w, w, swap)}),
          SymRep::trivial(2, s), ChainMap(w, s, aug)};
}

}  // namespace

// -- enumeration ------------------------------------------------------------

std::vector<ChainComplex> small_complexes(std::uint32_t p, std::size_t max_total, int max_degree) {
  std::vector<ChainComplex> out{ChainComplex::zero(p)};
  std::vector<std::size_t> dims;
  std::function<void(std::size_t)> grow = [&](std::size_t used) {
    if (!dims.empty() && dims.back() > 0) {
      std::vector<std::pair<std::size_t, std::size_t>> shapes;
      std::size_t entries = 0;
      for (std::size_t n = 1; n < dims.size(); ++n) {
        shapes.emplace_back(dims[n - 1], dims[n]);
        entries += dims[n - 1] * dims[n];
      }
      std::vector<std::uint32_t> e(entries, 0);
      while (true) {
        std::vector<Matrix> diffs;
        std::size_t at = 0;
        for (auto [r, c] : shapes) {
          std::vector<long long> vals(e.begin() + static_cast<long>(at),
                                      e.begin() + static_cast<long>(at + r * c));
          diffs.push_back(Matrix::from_entries(p, r, c, vals));
          at += r * c;
        }
        try {
          out.emplace_back(p, dims, diffs);
        } catch (const ValidationError&) {
        }
        std::size_t i = 0;
        while (i < entries && ++e[i] == p) e[i++] = 0;
        if (i == entries) break;
      }
    }
    if (static_cast<int>(dims.size()) > max_degree) return;
    for (std::size_t d = 0; used + d <= max_total; ++d) {
      dims.push_back(d);
      grow(used + d);
      dims.pop_back();
    }
  };
  grow(0);
  return out;
}

std::vector<Spectrum> small_spectra(const ChainComplex& k, std::size_t max_total, int max_degree) {
  const auto cx = small_complexes(k.prime(), max_total, max_degree);
  std::vector<Spectrum> out;
  for (const auto& c : cx) out.emplace_back(k, std::vector<ChainComplex>{c}, std::vector<ChainMap>{});
  for (const auto& c0 : cx) {
    for (const auto& c1 : cx) {
      if (c0.total_dim() + c1.total_dim() > max_total) continue;
      for (const auto& s : all_chain_maps(tensor(c0, k), c1)) {
        out.emplace_back(k, std::vector<ChainComplex>{c0, c1}, std::vector<ChainMap>{s});
      }
    }
  }
  return out;
}

std::vector<SymmetricSpectrum> small_sym_spectra(const ChainComplex& k, std::size_t max_total,
                                                 int max_degree, int horizon) {
  const std::uint32_t p = k.prime();
  const auto cx = small_complexes(p, max_total, max_degree);
  std::vector<SymmetricSpectrum> out;
  std::vector<SymRep> levels;
  std::vector<ChainMap> sigmas;
  // All representations of Σ_n on c, by brute force over the generators.
  auto reps = [&](int n, const ChainComplex& c) {
    std::vector<SymRep> rs;
    if (n < 2) {
      rs.push_back(SymRep::trivial(n, c));
      return rs;
    }
    const auto ends = all_chain_maps(c, c);
    std::vector<ChainMap> invol;
    for (const auto& e : ends) {
      if ((e * e).is_identity()) invol.push_back(e);
    }
    std::vector<std::size_t> pick(static_cast<std::size_t>(n) - 1, 0);
    while (true) {
      std::vector<ChainMap> gens;
      for (auto i : pick) gens.push_back(invol[i]);
      try {
        rs.emplace_back(n, c, gens);
      } catch (const ValidationError&) {
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == invol.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    return rs;
  };
  std::function<void(int, std::size_t)> grow = [&](int n, std::size_t used) {
    if (n > horizon) {
      try {
        out.emplace_back(k, levels, sigmas);
      } catch (const ValidationError&) {
      }
      return;
    }
    for (const auto& c : cx) {
      if (used + c.total_dim() > max_total) continue;
      for (const auto& r : reps(n, c)) {
        levels.push_back(r);
        if (n == 0) {
          grow(n + 1, used + c.total_dim());
        } else {
          for (const auto& s : all_chain_maps(tensor(levels[static_cast<std::size_t>(n) - 1].space(), k), c)) {
            sigmas.push_back(s);
            grow(n + 1, used + c.total_dim());
            sigmas.pop_back();
          }
        }
        levels.pop_back();
      }
    }
  };
  grow(0, 0);
  return out;
}

std::size_t stored_total_dim(const Spectrum& x) {
  std::size_t t = 0;
  for (const auto& l : x.stored_levels()) t += l.total_dim();
  return t;
}

std::size_t stored_total_dim(const SymmetricSpectrum& x) {
  std::size_t t = 0;
  for (const auto& l : x.levels()) t += l.space().total_dim();
  return t;
}

std::vector<SpectrumMap> all_spectrum_maps(const Spectrum& a, const Spectrum& b) {
  const ChainComplex& k = a.K();
  const int d = k.top();
  const int top = std::max(a.tail_index(), b.tail_index());
  LinearSystem sys(k.prime());
  std::vector<MapVar> vars;
  for (int n = 0; n <= top; ++n) vars.push_back(add_map_var(sys, a.level(n), b.level(n)));
  for (int n = 0; n < top; ++n) {
    add_relation(sys,
                 {{id(b.level(n + 1)), &vars[static_cast<std::size_t>(n) + 1], a.sigma(n)},
                  {b.sigma(n).scaled(-1), &vars[static_cast<std::size_t>(n)], id(tensor(a.level(n), k)), true}},
                 d);
  }
  std::vector<SpectrumMap> out;
  if (auto space = sys.solution_space()) {
    for_each_solution(*space, k.prime(), [&](const std::vector<Matrix>& x) {
      std::vector<ChainMap> comps;
      for (const auto& v : vars) comps.push_back(value_of(v, x));
      out.emplace_back(a, b, comps);
    });
  }
  return out;
}

std::vector<SymMap> all_sym_maps(const SymmetricSpectrum& a, const SymmetricSpectrum& b) {
  const ChainComplex& k = a.K();
  const int d = k.top();
  const int h = std::min(a.horizon(), b.horizon());
  LinearSystem sys(k.prime());
  std::vector<MapVar> vars;
  for (int n = 0; n <= h; ++n) {
    vars.push_back(add_map_var(sys, a.space(n), b.space(n)));
    equivariant(sys, vars.back(), a.level(n), b.level(n), d);
  }
  for (int n = 0; n < h; ++n) {
    add_relation(sys,
                 {{id(b.space(n + 1)), &vars[static_cast<std::size_t>(n) + 1], a.sigma(n)},
                  {b.sigma(n).scaled(-1), &vars[static_cast<std::size_t>(n)], id(tensor(a.space(n), k)), true}},
                 d);
  }
  std::vector<SymMap> out;
  if (auto space = sys.solution_space()) {
    for_each_solution(*space, k.prime(), [&](const std::vector<Matrix>& x) {
      std::vector<ChainMap> comps;
      for (const auto& v : vars) comps.push_back(value_of(v, x));
      out.emplace_back(a, b, comps);
    });
  }
  return out;
}

// -- resolutions ------------------------------------------------------------

ConeResolution cone_resolution(const SymRep& t) {
  const int n = t.arity();
  const ChainComplex& c = t.space();
  const std::uint32_t p = c.prime();
  const SymRep free = induced_free(n, c);
  const auto perms = all_perms(n);
  std::vector<Matrix> eps;
  for (int deg = 0; deg <= free.space().top(); ++deg) {
    std::vector<Matrix> blocks;
    for (const auto& g : perms) blocks.push_back(t.act(g).mat(deg));
    eps.push_back(Matrix::hstack(blocks));
  }
  const ChainMap epsilon(free.space(), c, eps);
  if (!is_equivariant(epsilon, free, t)) throw ValidationError("cone resolution: augmentation is not equivariant");
  const Sub ker = kernel(epsilon);
  const ChainComplex& fc = free.space();
  const ChainComplex& nc = ker.complex;
  // C_j = F_j ⊕ N_{j−1},  d(x, y) = (d x + ι y, −d y).
  const int top = std::max(fc.top(), nc.top() + 1);
  std::vector<std::size_t> dims;
  for (int j = 0; j <= top; ++j) dims.push_back(fc.dim(j) + nc.dim(j - 1));
  std::vector<Matrix> diffs{Matrix(p, 0, dims.empty() ? 0 : dims[0])};
  for (int j = 1; j <= top; ++j) {
    Matrix m(p, dims[static_cast<std::size_t>(j) - 1], dims[static_cast<std::size_t>(j)]);
    m.paste(0, 0, fc.diff(j));
    m.paste(0, fc.dim(j), ker.inclusion.mat(j - 1));
    m.paste(fc.dim(j - 1), fc.dim(j), nc.diff(j - 1).scaled(-1));
    diffs.push_back(m);
  }
  const ChainComplex cone(p, dims, diffs);
  std::vector<ChainMap> gens;
  for (int i = 0; i + 1 < n; ++i) {
    const ChainMap on_kernel = factor_through_injection(free.gen(i) * ker.inclusion, ker.inclusion);
    std::vector<Matrix> mats;
    for (int j = 0; j <= top; ++j) mats.push_back(Matrix::block_diag({free.gen(i).mat(j), on_kernel.mat(j - 1)}));
    gens.emplace_back(cone, cone, mats);
  }
  std::vector<Matrix> aug;
  for (int j = 0; j <= std::max(top, c.top()); ++j) {
    Matrix m(p, c.dim(j), cone.dim(j));
    m.paste(0, 0, epsilon.mat(j));
    aug.push_back(m);
  }
  return {SymRep(n, cone, gens), ChainMap(cone, c, aug)};
}

// -- the oracles --------------------------------------------------------------

LiftingVerdict lifting_oracle(const SpectrumMap& f) {
  LiftingVerdict verdict;
  const Spectrum& a = f.source();
  const Spectrum& b = f.target();
  const std::uint32_t p = a.prime();
  const int d = a.suspension_degree();
  const int top = comparison_horizon(a, b);
  for (int m = 0; m <= top; ++m) {
    const ChainComplex bprev = m > 0 ? b.level(m - 1) : ChainComplex::zero(p);
    const int kmax = relevant_degree(a.level(m), b.level(m), m > 0 ? &bprev : nullptr, d);
    for (int k = 0; k <= kmax; ++k) {
      const ChainComplex disk = ChainComplex::disk(p, k + 1);
      const ChainMap p_m = ChainMap::zero(disk, ChainComplex::zero(p));
      if (!bf_family(f, m, p_m, "D^" + std::to_string(k + 1) + " -> 0", verdict)) return verdict;
    }
  }
  return verdict;
}

LiftingVerdict lifting_oracle(const SymMap& f) {
  LiftingVerdict verdict;
  const SymmetricSpectrum& a = f.source();
  const SymmetricSpectrum& b = f.target();
  const std::uint32_t p = a.prime();
  const int d = a.suspension_degree();
  for (int m = 0; m <= f.horizon(); ++m) {
    const ChainComplex bprev = m > 0 ? b.space(m - 1) : ChainComplex::zero(p);
    const int kmax = relevant_degree(a.space(m), b.space(m), m > 0 ? &bprev : nullptr, d);
    std::vector<SymFibration> family;
    for (int k = 0; k <= kmax; ++k) {
      const SymRep free = induced_free(m, ChainComplex::disk(p, k + 1));
      const SymRep zero = zero_rep(m, p);
      family.push_back({"F[Σ_" + std::to_string(m) + "] ⊗ D^" + std::to_string(k + 1) + " -> 0", free,
                        zero, ChainMap::zero(free.space(), zero.space())});
      if (m == 2 && p == 2) family.push_back(w_family(p, k));
    }
    const SymRep& bm = b.level(m);
    const ConeResolution cb = cone_resolution(bm);
    family.push_back({"C(B_" + std::to_string(m) + ") -> B_" + std::to_string(m), cb.complex, bm, cb.epsilon});
    const SymCorner corner = sym_corner(m, f);
    const Quotient q = cokernel(corner.corner);
    std::vector<ChainMap> qgens;
    for (const auto& g : bm.gens()) qgens.push_back(factor_through_surjection(q.projection * g, q.projection));
    const SymRep qrep(m, q.complex, qgens);
    const ConeResolution cq = cone_resolution(qrep);
    const Pullback pb = pullback(q.projection, cq.epsilon);
    std::vector<ChainMap> gens;
    for (int i = 0; i + 1 < m; ++i) {
      gens.push_back(induced_to_pullback(pb, bm.gen(i) * pb.to_b, cq.complex.gen(i) * pb.to_c));
    }
    family.push_back({"B_" + std::to_string(m) + " ×_Q C(Q) -> B_" + std::to_string(m),
                      SymRep(m, pb.complex, gens), bm, pb.to_b});
    for (const auto& fib : family) {
      if (!sym_family(f, m, fib, verdict)) return verdict;
    }
  }
  return verdict;
}

}  // namespace stab
