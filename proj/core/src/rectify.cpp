#include "stab/rectify.hpp"

#include <string>

#include "stab/symmetric.hpp"

namespace stab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

ChainMap id(const ChainComplex& c) { return ChainMap::identity(c); }

// (a ⊗ K) ⊗ J → (a ⊗ J) ⊗ K with the Koszul sign of moving K past J.
ChainMap swap_last(const ChainComplex& a, const ChainComplex& k, const ChainComplex& j) {
  return associator_inverse(a, j, k) * tensor(id(a), twist(k, j)) * associator(a, k, j);
}

}  // namespace

// -- unit intervals ---------------------------------------------------------

void validate_interval(const UnitInterval& i) {
  const ChainComplex s = ChainComplex::unit(i.complex.prime());
  const ChainComplex& c = i.complex;
  require(i.i0.source() == s && i.i0.target() == c, "interval: i0 must be S → I");
  require(i.i1.source() == s && i.i1.target() == c, "interval: i1 must be S → I");
  require(i.pi.source() == c && i.pi.target() == s, "interval: π must be I → S");
  require(i.H.source() == tensor(c, c) && i.H.target() == c, "interval: H must be I⊗I → I");
  require((i.pi * i.i0).is_identity(), "interval: π∘i0 != id");
  require((i.pi * i.i1).is_identity(), "interval: π∘i1 != id");
  require(is_injective(copair(direct_sum(s, s), i.i0, i.i1)), "interval: i0 ⊔ i1 is not injective");
  require(is_quasi_iso(i.pi), "interval: π is not a quasi-isomorphism");
  const ChainMap collapse = i.i0 * i.pi;
  require(i.H * tensor(id(c), i.i0) == collapse, "interval: H(1⊗i0) != i0∘π");
  require(i.H * tensor(i.i0, id(c)) == collapse, "interval: H(i0⊗1) != i0∘π");
  require((i.H * tensor(id(c), i.i1)).is_identity(), "interval: H(1⊗i1) != id");
}

bool is_unit_interval(const UnitInterval& i) {
  try {
    validate_interval(i);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

UnitInterval standard_interval(std::uint32_t p) {
  const ChainComplex c = ChainComplex::interval(p);
  const ChainComplex s = ChainComplex::unit(p);
  const ChainComplex cc = tensor(c, c);
  const TensorIndex ti(c, c);
  Matrix h0(p, 2, cc.dim(0)), h1(p, 1, cc.dim(1)), h2(p, 0, cc.dim(2));
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) h0.set(std::min(a, b), ti.index(0, 0, a, b), 1);
  }
  h1.set(0, ti.index(1, 0, 1, 0), 1);  // [1]⊗e ↦ e
  h1.set(0, ti.index(1, 1, 0, 1), 1);  // e⊗[1] ↦ e
  UnitInterval out{c,
                   ChainMap(s, c, {Matrix::from_rows(p, {{1}, {0}})}),
                   ChainMap(s, c, {Matrix::from_rows(p, {{0}, {1}})}),
                   ChainMap(c, s, {Matrix::from_rows(p, {{1, 1}}), Matrix(p, 0, 1)}),
                   ChainMap(cc, c, {h0, h1, h2})};
  validate_interval(out);
  return out;
}

ChainMap standard_flip(std::uint32_t p) {
  const ChainComplex c = ChainComplex::interval(p);
  return ChainMap(c, c, {Matrix::from_rows(p, {{0, 1}, {1, 0}}), Matrix::from_rows(p, {{-1}})});
}

ChainMap IntervalHomotopy::start() const { return map * tensor(id(source), interval.i0); }

ChainMap IntervalHomotopy::end() const { return map * tensor(id(source), interval.i1); }

IntervalHomotopy constant_homotopy(const ChainMap& f, const UnitInterval& i) {
  return {f.source(), i, f * tensor(id(f.source()), i.pi)};
}

IntervalHomotopy interval_form(const ChainHomotopy& h) {
  const ChainComplex& a = h.from.source();
  const ChainComplex& y = h.from.target();
  const std::uint32_t p = a.prime();
  const UnitInterval i = standard_interval(p);
  const ChainComplex src = tensor(a, i.complex);
  const TensorIndex ti(a, i.complex);
  const Field field(p);
  std::vector<Matrix> mats;
  for (int n = 0; n <= std::max(src.top(), y.top()); ++n) {
    Matrix m(p, y.dim(n), src.dim(n));
    const Matrix from = h.from.mat(n), to = h.to.mat(n);
    for (std::size_t v = 0; v < a.dim(n); ++v) {
      for (std::size_t w = 0; w < y.dim(n); ++w) {
        m.set(w, ti.index(n, n, v, 0), from(w, v));
        m.set(w, ti.index(n, n, v, 1), to(w, v));
      }
    }
    if (n >= 1) {
      const Matrix hn = h.comp(n - 1);
      for (std::size_t v = 0; v < a.dim(n - 1); ++v) {
        for (std::size_t w = 0; w < y.dim(n); ++w) {
          m.set(w, ti.index(n, n - 1, v, 0), field.mul(field.sign(n - 1), hn(w, v)));
        }
      }
    }
    mats.push_back(m);
  }
  return {a, i, ChainMap(src, y, mats)};
}

UnitInterval amalgamate(const UnitInterval& first, const UnitInterval& second) {
  const Pushout po = pushout(first.i1, second.i0);
  const ChainComplex& j = po.complex;
  const ChainMap& j0 = po.from_b;
  const ChainMap& j1 = po.from_c;
  const DirectSum ds = direct_sum(first.complex, second.complex);
  const ChainMap q = copair(ds, j0, j1);
  const ChainComplex& a = first.complex;
  const ChainMap lower = j0 * first.H;
  const ChainMap upper = j0 * tensor(id(a), second.pi);
  const ChainMap cross = j0 * first.H * tensor(first.i1 * second.pi, id(a));
  const ChainMap outer = j1 * second.H;
  const ChainMap m = lower * tensor(ds.pr_a, ds.pr_a) + upper * tensor(ds.pr_a, ds.pr_b) +
                     cross * tensor(ds.pr_b, ds.pr_a) + outer * tensor(ds.pr_b, ds.pr_b);
  UnitInterval out{j, j0 * first.i0, j1 * second.i1, induced_from_pushout(po, first.pi, second.pi),
                   factor_through_surjection(m, tensor(q, q))};
  validate_interval(out);
  return out;
}

IntervalHomotopy concatenate(const IntervalHomotopy& first, const IntervalHomotopy& second) {
  if (first.end() != second.start()) {
    throw ValidationError("concatenate: the first homotopy does not end where the second starts");
  }
  const UnitInterval j = amalgamate(first.interval, second.interval);
  const Pushout po = pushout(first.interval.i1, second.interval.i0);
  const DirectSum ds = direct_sum(first.interval.complex, second.interval.complex);
  const ChainComplex& a = first.source;
  const ChainMap m = first.map * tensor(id(a), ds.pr_a) + second.map * tensor(id(a), ds.pr_b);
  const ChainMap q = copair(ds, po.from_b, po.from_c);
  IntervalHomotopy out{a, j, factor_through_surjection(m, tensor(id(a), q))};
  require(out.start() == first.start() && out.end() == second.end(),
          "concatenate: endpoints not preserved");
  return out;
}

// -- symmetry certificates --------------------------------------------------

ChainMap cyclic_permutation(const ChainComplex& k) { return permute_factors({k, k, k}, {1, 2, 0}); }

std::optional<SymmetryCertificate> certify_symmetric(const ChainComplex& k) {
  const std::uint32_t p = k.prime();
  const UnitInterval in = standard_interval(p);
  const ChainMap cyc = cyclic_permutation(k);
  const ChainComplex k3 = cyc.source();
  if (cyc.is_identity()) {
    return SymmetryCertificate{k, in, tensor(id(k3), in.pi)};
  }
  const auto h = find_homotopy(cyc, id(k3));
  if (!h) return std::nullopt;
  // x⊗[0] ↦ c(x), x⊗[1] ↦ x, x⊗e ↦ (−1)^{|x|} h(x).
  const ChainComplex src = tensor(k3, in.complex);
  const TensorIndex ti(k3, in.complex);
  const Field field(p);
  std::vector<Matrix> mats;
  for (int n = 0; n <= std::max(src.top(), k3.top()); ++n) {
    Matrix m(p, k3.dim(n), src.dim(n));
    const Matrix c = cyc.mat(n);
    for (std::size_t x = 0; x < k3.dim(n); ++x) {
      for (std::size_t r = 0; r < k3.dim(n); ++r) {
        m.set(r, ti.index(n, n, x, 0), c(r, x));
        m.set(r, ti.index(n, n, x, 1), r == x ? 1 : 0);
      }
    }
    if (n >= 1) {
      const Matrix hm = h->comp(n - 1);
      for (std::size_t x = 0; x < k3.dim(n - 1); ++x) {
        for (std::size_t r = 0; r < k3.dim(n); ++r) {
          m.set(r, ti.index(n, n - 1, x, 0), field.mul(field.sign(n - 1), hm(r, x)));
        }
      }
    }
    mats.push_back(m);
  }
  SymmetryCertificate cert{k, in, ChainMap(src, k3, mats)};
  const IntervalHomotopy check{k3, in, cert.homotopy};
  require(check.start() == cyc && check.end().is_identity(), "certificate endpoints are wrong");
  return cert;
}

// -- mapping cylinders ------------------------------------------------------

CylinderSquare mapping_cylinder_square(const HomotopySquare& sq, const IntervalHomotopy& h) {
  const ChainComplex& a = sq.r.source();
  const ChainComplex& b = sq.r.target();
  if (sq.f.source() != a || sq.s.source() != sq.f.target() || sq.g.source() != b ||
      sq.g.target() != sq.s.target()) {
    throw ShapeError("mapping_cylinder_square: square shapes do not match");
  }
  if (h.map.source() != tensor(a, h.interval.complex) || h.map.target() != sq.g.target()) {
    throw ShapeError("mapping_cylinder_square: homotopy has the wrong shape");
  }
  if (h.start() != sq.g * sq.r || h.end() != sq.s * sq.f) {
    throw ValidationError("mapping_cylinder_square: homotopy endpoints do not match g∘r and s∘f");
  }
  const UnitInterval& in = h.interval;
  const ChainComplex& i = in.complex;
  const Pushout po = pushout(sq.r, tensor(id(a), in.i0));
  const ChainMap q = induced_from_pushout(po, id(b), sq.r * tensor(id(a), in.pi));
  const ChainMap r_prime = po.from_c * tensor(id(a), in.i1);
  const ChainMap g_prime = induced_from_pushout(po, sq.g, h.map);

  const ChainComplex ai = tensor(a, i);
  const DirectSum ds = direct_sum(b, ai);
  const ChainMap on_b = sq.g * tensor(id(b), in.pi);
  const ChainMap on_cyl = h.map * tensor(id(a), in.H) * associator(a, i, i);
  const ChainMap m = on_b * tensor(ds.pr_a, id(i)) + on_cyl * tensor(ds.pr_b, id(i));
  const ChainMap hp = factor_through_surjection(m, tensor(copair(ds, po.from_b, po.from_c), id(i)));

  CylinderSquare out{po.complex, q, r_prime, g_prime, {po.complex, in, hp}};
  require(is_quasi_iso(q), "mapping cylinder: q is not a quasi-isomorphism");
  require(q * r_prime == sq.r, "mapping cylinder: q∘r′ != r");
  require(g_prime * r_prime == sq.s * sq.f, "mapping cylinder: g′∘r′ != s∘f");
  require(out.h_prime.start() == sq.g * q, "mapping cylinder: H′ does not start at g∘q");
  require(out.h_prime.end() == g_prime, "mapping cylinder: H′ does not end at g′");
  return out;
}

// -- rectification ----------------------------------------------------------

Rectification rectify_spectrum_map(const Spectrum& a, const Spectrum& b,
                                   const std::vector<ChainMap>& f,
                                   const std::vector<IntervalHomotopy>& H, int top) {
  if (a.K() != b.K()) throw ShapeError("rectify: spectra over different K");
  if (static_cast<int>(f.size()) < top + 1 || static_cast<int>(H.size()) < top) {
    throw ShapeError("rectify: need maps 0.." + std::to_string(top) + " and homotopies 0.." +
                     std::to_string(top - 1));
  }
  const ChainComplex& k = a.K();
  for (int n = 0; n <= top; ++n) {
    if (f[n].source() != a.level(n) || f[n].target() != b.level(n)) {
      throw ShapeError("rectify: f_" + std::to_string(n) + " has the wrong shape");
    }
  }
  for (int n = 0; n < top; ++n) {
    if (H[n].start() != f[n + 1] * a.sigma(n) || H[n].end() != b.sigma(n) * tensor(f[n], id(k))) {
      throw ValidationError("rectify: homotopy " + std::to_string(n) + " has the wrong endpoints");
    }
  }
  std::vector<ChainComplex> levels{a.level(0)};
  std::vector<ChainMap> sigmas, hs{id(a.level(0))}, gs{f[0]};
  std::vector<IntervalHomotopy> homotopies{constant_homotopy(f[0], standard_interval(k.prime()))};
  for (int n = 0; n < top; ++n) {
    const ChainComplex& cn = levels.back();
    const ChainMap& hn = hs.back();
    const ChainMap& gn = gs.back();
    const IntervalHomotopy& gh = homotopies.back();
    const ChainComplex ck = tensor(cn, k);
    // f_{n+1}σ(h_n⊗K) ⇒ σ(f_n h_n ⊗ K) ⇒ σ(g_n ⊗ K).
    const IntervalHomotopy first{ck, H[n].interval,
                                 H[n].map * tensor(tensor(hn, id(k)), id(H[n].interval.complex))};
    const IntervalHomotopy second{
        ck, gh.interval, b.sigma(n) * tensor(gh.map, id(k)) * swap_last(cn, k, gh.interval.complex)};
    const IntervalHomotopy joined = concatenate(first, second);
    const HomotopySquare sq{tensor(gn, id(k)), a.sigma(n) * tensor(hn, id(k)), b.sigma(n), f[n + 1]};
    const CylinderSquare cyl = mapping_cylinder_square(sq, joined);
    levels.push_back(cyl.b_prime);
    sigmas.push_back(cyl.r_prime);
    hs.push_back(cyl.q);
    gs.push_back(cyl.g_prime);
    homotopies.push_back(cyl.h_prime);
  }
  const Spectrum c = Spectrum::truncated(k, levels, sigmas);
  Rectification out{c, SpectrumMap(c, a, hs), SpectrumMap(c, b, gs), homotopies};
  for (int n = 0; n <= top; ++n) {
    require(is_quasi_iso(hs[n]), "rectify: h_" + std::to_string(n) + " is not a quasi-isomorphism");
    require(homotopies[n].start() == f[n] * hs[n] && homotopies[n].end() == gs[n],
            "rectify: recorded homotopy " + std::to_string(n) + " has the wrong endpoints");
  }
  return out;
}

TensoringComparison compare_tensorings(const Spectrum& x, const SymmetryCertificate& cert, int top) {
  const ChainComplex& k = x.K();
  if (cert.k != k) throw ShapeError("compare_tensorings: certificate is for a different K");
  if (cert.interval.complex != ChainComplex::interval(k.prime())) {
    throw ShapeError("compare_tensorings: certificate must use the standard interval");
  }
  const Spectrum a = prolong_G_no_twist(prolong_G_no_twist(x));
  const Spectrum b = tensor_K_twist(tensor_K_twist(x));
  const ChainComplex& i = cert.interval.complex;
  const ChainComplex k3 = tensor_power(k, 3);
  // Run the certificate backwards: identity at i0, cyclic permutation at i1.
  const ChainMap c = cert.homotopy * tensor(id(k3), standard_flip(k.prime()));
  std::vector<ChainMap> f;
  std::vector<IntervalHomotopy> H;
  for (int n = 0; n <= top; ++n) {
    f.push_back(id(a.level(n)));
    if (n == top) break;
    const ChainComplex xn = x.level(n);
    const ChainComplex kk = tensor(k, k);
    // ((X⊗K)⊗K)⊗K ≅ X⊗K^{⊗3}
    const ChainMap beta = tensor(id(xn), associator_inverse(k, k, k)) * associator(xn, k, kk) *
                          associator(tensor(xn, k), k, k);
    const ChainMap on_k3 = tensor(id(xn), c) * associator(xn, k3, i) * tensor(beta, id(i));
    const ChainMap sig = tensor(tensor(x.sigma(n), id(k)), id(k));
    H.push_back({beta.source(), cert.interval, sig * inverse(beta) * on_k3});
  }
  TensoringComparison out{a, b, rectify_spectrum_map(a, b, f, H, top), false};
  bool ok = true;
  for (int n = 0; n <= top; ++n) {
    ok = ok && is_quasi_iso(out.rect.h.comp(n)) && is_quasi_iso(out.rect.g.comp(n));
  }
  out.level_equivalences = ok;
  return out;
}

}  // namespace stab
