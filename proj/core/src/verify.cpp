#include "stab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stab/corpus.hpp"
#include "stab/io.hpp"
#include "stab/oracle.hpp"
#include "stab/rectify.hpp"
#include "stab/spectra.hpp"
#include "stab/symmetric.hpp"

namespace stab {
namespace {

using nlohmann::json;

const std::vector<ClaimInfo> kClaims = {
    {"adjunction-triangles",
     "The triangle identities hold for F_n ⊣ Ev_n, Ev_n ⊣ R_n and t ⊣ s, for spectra and for "
     "symmetric spectra."},
    {"cofibration-lifting",
     "The cofibration criteria (injective corner maps with projective cokernels) agree with the "
     "left lifting property against level trivial fibrations."},
    {"degenerate-suspension", "With K = S, π_k(F_0 A) is H_k(A) for k ≥ 0 and zero for k < 0."},
    {"iota-coincide", "The maps ι_{RX} and R(ι_X) : RX → RRX coincide."},
    {"rinf-level-equivalence",
     "j_X : X → R^∞X is a level equivalence when X is a U-spectrum, in particular for X = R^∞Y."},
    {"rinf-u-spectrum", "R^∞X is a U-spectrum."},
    {"s-map-stable-equivalence", "s_n^A : F_{n+1}(A⊗K) → F_n A is a stable equivalence."},
    {"shift-suspension",
     "Rs is naturally isomorphic to LG: π_k(sX) and π_k(X⊗̄K) are both π_{k−1}(X)."},
    {"smash-monoidal", "Sym(K) ∧ X ≅ X and F_n A ∧ F_m B ≅ F_{n+m}(A⊗B), levelwise."},
    {"sphere-homotopy",
     "π_k(F_0 S) is F_p for k = 0 and zero otherwise; π_{−n}(F_n S) is F_p."},
    {"stabilization-agreement",
     "The homotopy groups of F_0 A computed in spectra agree with those of the symmetric "
     "suspension spectrum."},
    {"stable-fibration",
     "Identities and X → 0 for U-spectra X are stable fibrations; the pullback of a stable "
     "equivalence along a level fibration is a stable equivalence."},
    {"tensoring-comparison",
     "For K with a symmetry certificate, X⊗̄K⊗̄K and X⊗K⊗K are connected by level equivalences "
     "through a rectified zig-zag."},
    {"unit-interval",
     "The standard interval is a unit interval, mapping cylinder squares satisfy their "
     "postconditions, and amalgamated intervals are unit intervals."},
};

const std::string& statement_of(const std::string& id) {
  for (const auto& c : kClaims) {
    if (c.id == id) return c.statement;
  }
  throw std::invalid_argument("unknown claim: " + id);
}

struct Outcome {
  bool pass = true;
  std::string detail;
  json replay;

  void fail(const std::string& why, json data = nullptr) {
    if (!pass) return;
    pass = false;
    detail = why;
    replay = std::move(data);
  }
  void require(bool ok, const std::string& why, const std::function<json()>& data = {}) {
    if (!ok && pass) fail(why, data ? data() : json(nullptr));
  }
};

json doc(const std::string& text) { return json::parse(text); }

class Context {
 public:
  explicit Context(const VerifyOptions& opts) : opts_(opts) {}

  const VerifyOptions& opts() const { return opts_; }

  std::mt19937_64 rng(std::uint32_t p, std::uint64_t salt) const {
    return std::mt19937_64(opts_.seed * 1000003u + p * 7919u + salt);
  }

  CorpusOptions corpus_options() const {
    CorpusOptions c;
    c.seed = opts_.seed;
    c.sizes = opts_.sizes;
    c.corrupt = opts_.corrupt;
    return c;
  }

  Spectrum builtin(const std::string& name, std::uint32_t p) const {
    Spectrum x = *builtin_spectrum(name, p);
    return name == opts_.corrupt ? corrupted(x) : x;
  }

  void run(const std::string& claim, std::uint32_t p, const std::string& instance,
           const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const auto t1 = std::chrono::steady_clock::now();
    ReportEntry e;
    e.claim = claim;
    e.statement = statement_of(claim);
    e.instance = "p=" + std::to_string(p) + " " + instance;
    e.pass = out.pass;
    e.seconds = std::chrono::duration<double>(t1 - t0).count();
    e.detail = out.detail;
    if (!out.pass) {
      json r = {{"claim", claim}, {"seed", opts_.seed}, {"prime", p}, {"instance", instance},
                {"detail", out.detail}, {"data", out.replay}};
      e.replay = r.dump();
    }
    entries_.push_back(std::move(e));
  }

  std::vector<ReportEntry> take() { return std::move(entries_); }

 private:
  VerifyOptions opts_;
  std::vector<ReportEntry> entries_;
};

ChainComplex K(std::uint32_t p) { return ChainComplex::sphere(p, 1); }

std::string range(int lo, int hi) { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }

// -- suites -----------------------------------------------------------------

void sphere_homotopy(Context& ctx, std::uint32_t p) {
  ctx.run("sphere-homotopy", p, "sphere, k in [-5,5]", [&](Outcome& o) {
    const Spectrum s = ctx.builtin("sphere", p);
    for (int k = -5; k <= 5; ++k) {
      const std::size_t v = stable_pi(s, k).value;
      o.require(v == (k == 0 ? 1u : 0u), "pi_" + std::to_string(k) + " = " + std::to_string(v),
                [&] { return doc(to_json(s)); });
    }
  });
  ctx.run("sphere-homotopy", p, "F_nS at k = -n, n in [0,3]", [&](Outcome& o) {
    for (int n = 0; n <= 3; ++n) {
      const Spectrum x = n == 0 ? ctx.builtin("sphere", p) : ctx.builtin("F" + std::to_string(n) + "S", p);
      const std::size_t v = stable_pi(x, -n).value;
      o.require(v == 1, "F" + std::to_string(n) + "S has pi = " + std::to_string(v),
                [&] { return doc(to_json(x)); });
    }
  });
}

void iota_coincide(Context& ctx, std::uint32_t p) {
  const auto corpus = spectrum_corpus(p, ctx.corpus_options());
  ctx.run("iota-coincide", p, std::to_string(corpus.size()) + " corpus spectra", [&](Outcome& o) {
    for (const auto& x : corpus) {
      const RResult r = R_once(x.value);
      const RResult rr = R_once(r.value);
      o.require(rr.iota == R_map(r.iota), x.name + ": iota_RX != R(iota_X)",
                [&] { return doc(to_json(x.value)); });
    }
  });
}

void rinf(Context& ctx, std::uint32_t p) {
  const auto corpus = spectrum_corpus(p, ctx.corpus_options());
  const ProbeGrid grid{4, 5};
  const std::string what = std::to_string(corpus.size()) + " corpus spectra, levels <= 4";
  ctx.run("rinf-u-spectrum", p, what, [&](Outcome& o) {
    for (const auto& x : corpus) {
      o.require(is_U_spectrum(R_infinity(x.value).value, grid.max_level),
                x.name + ": R^inf X is not a U-spectrum", [&] { return doc(to_json(x.value)); });
    }
  });
  ctx.run("rinf-level-equivalence", p, what + ", degrees <= 5", [&](Outcome& o) {
    std::size_t u = 0;
    for (const auto& x : corpus) {
      const Spectrum y = R_infinity(x.value).value;
      o.require(is_level_equivalence(R_infinity(y).j, grid),
                x.name + ": j is not a level equivalence on R^inf X",
                [&] { return doc(to_json(x.value)); });
      if (is_U_spectrum(x.value, grid.max_level)) {
        ++u;
        o.require(is_level_equivalence(R_infinity(x.value).j, grid),
                  x.name + ": j_X is not a level equivalence on a U-spectrum",
                  [&] { return doc(to_json(x.value)); });
      }
    }
    o.require(u > 0, "no corpus member is a U-spectrum");
  });
}

void s_map_stable(Context& ctx, std::uint32_t p) {
  auto rng = ctx.rng(p, 4);
  std::vector<Named<ChainComplex>> as;
  for (const char* name : {"S", "K", "I"}) as.push_back({name, *builtin_complex(name, p)});
  as.push_back({"random", random_complex(p, rng, ctx.opts().sizes)});
  for (const auto& a : as) {
    ctx.run("s-map-stable-equivalence", p, "A = " + a.name + ", n in [0,3]", [&](Outcome& o) {
      for (int n = 0; n <= 3; ++n) {
        o.require(is_stable_equivalence(s_map(n, a.value, K(p)), {4, 5}),
                  "s_" + std::to_string(n) + " is not a stable equivalence",
                  [&] { return json{{"n", n}, {"A", doc(to_json(a.value))}}; });
      }
    });
  }
}

void shift_suspension(Context& ctx, std::uint32_t p) {
  const auto corpus = spectrum_corpus(p, ctx.corpus_options());
  const std::string what = std::to_string(corpus.size()) + " corpus spectra, k in " + range(-4, 4);
  ctx.run("shift-suspension", p, "sX: " + what, [&](Outcome& o) {
    for (const auto& x : corpus) {
      const Spectrum sx = shift_s(x.value);
      for (int k = -4; k <= 4; ++k) {
        o.require(stable_pi(sx, k).value == stable_pi(x.value, k - 1).value,
                  x.name + ": pi_k(sX) != pi_{k-1}(X) at k = " + std::to_string(k),
                  [&] { return doc(to_json(x.value)); });
      }
    }
  });
  ctx.run("shift-suspension", p, "X(x)K: " + what, [&](Outcome& o) {
    for (const auto& x : corpus) {
      const Spectrum gx = prolong_G_no_twist(x.value);
      for (int k = -4; k <= 4; ++k) {
        o.require(stable_pi(gx, k).value == stable_pi(x.value, k - 1).value,
                  x.name + ": pi_k(X(x)K) != pi_{k-1}(X) at k = " + std::to_string(k),
                  [&] { return doc(to_json(x.value)); });
      }
    }
  });
}

void adjunctions(Context& ctx, std::uint32_t p) {
  constexpr int kInstances = 50;
  const std::vector<std::pair<AdjunctionKind, std::string>> kinds = {
      {AdjunctionKind::FreeEval, "F_n -| Ev_n"},
      {AdjunctionKind::EvalCofree, "Ev_n -| R_n"},
      {AdjunctionKind::ShiftTS, "t -| s"}};
  auto rng = ctx.rng(p, 6);
  std::vector<AdjunctionSample> plain;
  std::vector<SymAdjunctionSample> sym;
  const RandomSizes small{std::min(ctx.opts().sizes.max_degree, 2), std::min<std::size_t>(ctx.opts().sizes.max_dim, 2)};
  for (int i = 0; i < kInstances; ++i) {
    plain.push_back({i % 4, random_complex(p, rng, ctx.opts().sizes),
                     random_spectrum(K(p), rng, {ctx.opts().sizes, 3})});
    sym.push_back({i % 3, random_complex(p, rng, small), random_sym_spectrum(K(p), rng, 3)});
  }
  for (const auto& [kind, label] : kinds) {
    ctx.run("adjunction-triangles", p, "spectra, " + label + ", " + std::to_string(kInstances) + " instances",
            [&](Outcome& o) {
              const AdjunctionReport r = adjunction_check(kind, plain);
              o.require(r.checked == plain.size(), "not every instance was checked");
              if (!r.ok()) o.fail(r.failures.front());
            });
    ctx.run("adjunction-triangles", p,
            "symmetric spectra, " + label + ", " + std::to_string(kInstances) + " instances",
            [&](Outcome& o) {
              const AdjunctionReport r = sym_adjunction_check(kind, sym);
              o.require(r.checked == sym.size(), "not every instance was checked");
              if (!r.ok()) o.fail(r.failures.front());
            });
  }
}

void cofibration_lifting(Context& ctx, std::uint32_t p) {
  // The exhaustive oracle runs over F_2 only.
  if (p != 2) return;
  const ChainComplex k = K(p);
  ctx.run("cofibration-lifting", p, "all spectrum maps, total dimension <= 3", [&](Outcome& o) {
    const auto sp = small_spectra(k, 3, 2);
    std::size_t maps = 0;
    for (const auto& a : sp) {
      for (const auto& b : sp) {
        if (stored_total_dim(a) + stored_total_dim(b) > 3) continue;
        for (const auto& f : all_spectrum_maps(a, b)) {
          ++maps;
          const bool claimed = is_projective_cofibration(f);
          const LiftingVerdict v = lifting_oracle(f);
          o.require(claimed == v.lifts,
                    std::string("criterion says ") + (claimed ? "cofibration" : "not a cofibration") +
                        ", oracle says " + (v.lifts ? "lifts" : "no lift: " + v.obstruction),
                    [&] { return doc(to_json(f)); });
        }
      }
    }
    o.require(maps > 0, "no maps enumerated");
  });
  ctx.run("cofibration-lifting", p, "all symmetric maps, horizon 2, total dimension <= 3",
          [&](Outcome& o) {
            const auto ss = small_sym_spectra(k, 3, 2, 2);
            std::size_t maps = 0;
            for (const auto& a : ss) {
              for (const auto& b : ss) {
                if (stored_total_dim(a) + stored_total_dim(b) > 3) continue;
                for (const auto& f : all_sym_maps(a, b)) {
                  ++maps;
                  const bool claimed = is_sym_cofibration(f);
                  const LiftingVerdict v = lifting_oracle(f);
                  o.require(claimed == v.lifts,
                            std::string("criterion says ") +
                                (claimed ? "cofibration" : "not a cofibration") + ", oracle says " +
                                (v.lifts ? "lifts" : "no lift: " + v.obstruction),
                            [&] { return doc(to_json(f)); });
                }
              }
            }
            o.require(maps > 0, "no maps enumerated");
          });
}

void smash_monoidal(Context& ctx, std::uint32_t p) {
  constexpr int kHorizon = 4;
  const auto corpus = sym_corpus(p, kHorizon, ctx.corpus_options());
  ctx.run("smash-monoidal", p, std::to_string(corpus.size()) + " symmetric spectra, unit law",
          [&](Outcome& o) {
            for (const auto& x : corpus) {
              o.require(smash_unit_map(x.value).is_level_iso(), x.name + ": Sym(K) ^ X -> X is not an iso",
                        [&] { return doc(to_json(x.value)); });
            }
          });
  auto rng = ctx.rng(p, 8);
  std::vector<Named<ChainComplex>> as;
  for (const char* name : {"S", "K", "D1"}) as.push_back({name, *builtin_complex(name, p)});
  as.push_back({"random", random_complex(p, rng, {2, 2})});
  ctx.run("smash-monoidal", p, "F_nA ^ F_mB, n,m in [0,2], A,B in {S,K,D1,random}", [&](Outcome& o) {
    for (int n = 0; n <= 2; ++n) {
      for (int m = 0; m <= 2; ++m) {
        for (const auto& a : as) {
          for (const auto& b : as) {
            o.require(free_smash_comparison(n, a.value, m, b.value, K(p), kHorizon).is_level_iso(),
                      "F_" + std::to_string(n + m) + "(" + a.name + "(x)" + b.name + ") -> F_" +
                          std::to_string(n) + a.name + " ^ F_" + std::to_string(m) + b.name +
                          " is not an iso",
                      [&] {
                        return json{{"n", n}, {"m", m}, {"A", doc(to_json(a.value))},
                                    {"B", doc(to_json(b.value))}};
                      });
          }
        }
      }
    }
  });
}

void unit_interval(Context& ctx, std::uint32_t p) {
  ctx.run("unit-interval", p, "standard interval and amalgamations", [&](Outcome& o) {
    const UnitInterval i = standard_interval(p);
    o.require(is_unit_interval(i), "standard interval fails an identity");
    const UnitInterval ii = amalgamate(i, i);
    o.require(is_unit_interval(ii), "I u I is not a unit interval");
    const UnitInterval iii = amalgamate(ii, i);
    o.require(is_unit_interval(iii), "(I u I) u I is not a unit interval");
    o.require(iii.complex.dims() == std::vector<std::size_t>{4, 3}, "amalgamated sizes are not (4,3)");
  });
  ctx.run("unit-interval", p, "30 seeded mapping cylinder squares", [&](Outcome& o) {
    auto rng = ctx.rng(p, 9);
    const RandomSizes sz{std::min(ctx.opts().sizes.max_degree, 3), std::min<std::size_t>(ctx.opts().sizes.max_dim, 2)};
    for (int t = 0; t < 30; ++t) {
      const ChainComplex a = random_complex(p, rng, sz);
      const ChainComplex b = random_complex(p, rng, sz);
      const ChainComplex y = random_complex(p, rng, sz);
      const ChainMap r = random_chain_map(a, b, rng);
      const ChainMap g = random_chain_map(b, y, rng);
      // s = g + dh + hd is homotopic to g, so g∘r ≃ s∘r.
      std::vector<Matrix> hs, sm;
      const int top = std::max(b.top(), y.top());
      for (int n = 0; n <= top; ++n) hs.push_back(random_matrix(p, y.dim(n + 1), b.dim(n), rng));
      for (int n = 0; n <= top; ++n) {
        Matrix m = g.mat(n) + y.diff(n + 1) * hs[static_cast<std::size_t>(n)];
        if (n >= 1) m = m + hs[static_cast<std::size_t>(n) - 1] * b.diff(n);
        sm.push_back(m);
      }
      const ChainMap s(b, y, sm);
      const auto htp = find_homotopy(g * r, s * r);
      const auto replay = [&] {
        return json{{"a", doc(to_json(a))}, {"r", doc(to_json(r))}, {"g", doc(to_json(g))}, {"s", doc(to_json(s))}};
      };
      o.require(htp.has_value(), "square " + std::to_string(t) + ": no homotopy g r => s r", replay);
      if (!htp) continue;
      const CylinderSquare c = mapping_cylinder_square({r, r, s, g}, interval_form(*htp));
      const std::string at = "square " + std::to_string(t) + ": ";
      o.require(is_quasi_iso(c.q), at + "q is not a quasi-isomorphism", replay);
      o.require(c.q * c.r_prime == r, at + "q r' != r", replay);
      o.require(c.g_prime * c.r_prime == s * r, at + "g' r' != s f", replay);
      o.require(c.h_prime.start() == g * c.q, at + "H' does not start at g q", replay);
      o.require(c.h_prime.end() == c.g_prime, at + "H' does not end at g'", replay);
      o.require(is_unit_interval(c.h_prime.interval), at + "H' interval is not a unit interval", replay);
    }
  });
}

void tensoring_comparison(Context& ctx, std::uint32_t p) {
  const ChainComplex k = K(p);
  const auto cert = certify_symmetric(k);
  ctx.run("tensoring-comparison", p, "certificate for K = S^1", [&](Outcome& o) {
    o.require(cyclic_permutation(k).is_identity(), "cyclic permutation of K^3 is not the identity");
    o.require(cert.has_value(), "certify_symmetric(K) failed");
  });
  if (!cert) return;
  const auto corpus = spectrum_corpus(p, ctx.corpus_options());
  // Each spectrum is compared through its stored extent (at least level 1).
  ctx.run("tensoring-comparison", p,
          std::to_string(corpus.size()) + " corpus spectra, levels through max(tail,1)", [&](Outcome& o) {
            for (const auto& x : corpus) {
              const int top = std::max(1, x.value.tail_index());
              o.require(compare_tensorings(x.value, *cert, top).level_equivalences,
                        x.name + ": the zig-zag legs are not level equivalences",
                        [&] { return doc(to_json(x.value)); });
            }
          });
  ctx.run("tensoring-comparison", p,
          std::to_string(corpus.size()) + " corpus spectra, pi_k twist = no twist, k in " + range(-3, 3),
          [&](Outcome& o) {
            for (const auto& x : corpus) {
              const Spectrum a = prolong_G_no_twist(prolong_G_no_twist(x.value));
              const Spectrum b = tensor_K_twist(tensor_K_twist(x.value));
              for (int kk = -3; kk <= 3; ++kk) {
                o.require(stable_pi(a, kk).value == stable_pi(b, kk).value,
                          x.name + ": tensorings differ at k = " + std::to_string(kk),
                          [&] { return doc(to_json(x.value)); });
              }
            }
          });
}

void degenerate_suspension(Context& ctx, std::uint32_t p) {
  const auto corpus = complex_corpus(p, ctx.corpus_options());
  const ChainComplex s = ChainComplex::unit(p);
  const int hi = ctx.opts().sizes.max_degree + 1;
  ctx.run("degenerate-suspension", p,
          std::to_string(corpus.size()) + " corpus complexes, K = S, k in " + range(-3, hi), [&](Outcome& o) {
            for (const auto& a : corpus) {
              const Spectrum x = free_spectrum(0, a.value, s);
              for (int k = -3; k <= hi; ++k) {
                const std::size_t expect = k < 0 ? 0 : homology(a.value, k);
                o.require(stable_pi(x, k).value == expect, a.name + ": pi_" + std::to_string(k) + " != H_k",
                          [&] { return doc(to_json(a.value)); });
              }
            }
          });
}

void stabilization_agreement(Context& ctx, std::uint32_t p) {
  constexpr int kHorizon = 3;
  auto rng = ctx.rng(p, 12);
  std::vector<Named<ChainComplex>> as;
  for (const char* name : {"S", "K", "I"}) as.push_back({name, *builtin_complex(name, p)});
  as.push_back({"random", random_complex(p, rng, ctx.opts().sizes)});
  for (const auto& a : as) {
    ctx.run("stabilization-agreement", p, "F_0" + a.name + ", k in " + range(-3, 3), [&](Outcome& o) {
      const Spectrum bf = free_spectrum(0, a.value, K(p));
      const SymmetricSpectrum sym = free_sym(0, a.value, K(p), kHorizon);
      for (int k = -3; k <= 3; ++k) {
        o.require(stable_pi(bf, k).value == naive_pi(sym, k).value,
                  "tables differ at k = " + std::to_string(k), [&] { return doc(to_json(a.value)); });
      }
    });
  }
}

Spectrum product(const Spectrum& y, const Spectrum& w, SpectrumMap& pr_y, SpectrumMap& pr_w) {
  const Spectrum z = Spectrum::zero(y.K());
  const SpectrumPullback pb = pullback(SpectrumMap::zero(y, z), SpectrumMap::zero(w, z));
  pr_y = pb.to_b;
  pr_w = pb.to_c;
  return pb.value;
}

void stable_fibration(Context& ctx, std::uint32_t p) {
  const auto corpus = spectrum_corpus(p, ctx.corpus_options());
  const ProbeGrid grid{4, 5};
  ctx.run("stable-fibration", p, std::to_string(corpus.size()) + " identities and maps X -> 0", [&](Outcome& o) {
    const Spectrum z = Spectrum::zero(K(p));
    for (const auto& x : corpus) {
      o.require(is_stable_fibration(SpectrumMap::identity(x.value), grid), x.name + ": identity",
                [&] { return doc(to_json(x.value)); });
      const Spectrum u = R_infinity(x.value).value;
      o.require(is_stable_fibration(SpectrumMap::zero(u, z), grid), x.name + ": R^inf X -> 0",
                [&] { return doc(to_json(x.value)); });
      if (is_U_spectrum(x.value, grid.max_level)) {
        o.require(is_stable_fibration(SpectrumMap::zero(x.value, z), grid), x.name + ": X -> 0",
                  [&] { return doc(to_json(x.value)); });
      }
    }
  });
  ctx.run("stable-fibration", p, "20 pullbacks of stable equivalences along level fibrations",
          [&](Outcome& o) {
            auto rng = ctx.rng(p, 13);
            const SpectrumSizes sz{{std::min(ctx.opts().sizes.max_degree, 3), std::min<std::size_t>(ctx.opts().sizes.max_dim, 2)}, 2};
            for (int t = 0; t < 20; ++t) {
              SpectrumMap f;
              if (t % 2 == 0) {
                f = s_map(t / 2 % 3, random_complex(p, rng, sz.complex), K(p));
              } else {
                f = R_infinity(corpus[static_cast<std::size_t>(t) % corpus.size()].value).j;
              }
              const Spectrum& y = f.target();
              const Spectrum w = random_spectrum(K(p), rng, sz);
              const SpectrumMap g = random_spectrum_map(w, y, rng);
              SpectrumMap pr_y, pr_w;
              const Spectrum e = product(y, w, pr_y, pr_w);
              const SpectrumMap q = pr_y + g * pr_w;
              const auto replay = [&] {
                return json{{"f", doc(to_json(f))}, {"g", doc(to_json(g))}};
              };
              const std::string at = "instance " + std::to_string(t) + ": ";
              o.require(is_level_fibration(q, grid.max_level), at + "Y x W -> Y is not a level fibration", replay);
              o.require(is_stable_equivalence(f, grid), at + "f is not a stable equivalence", replay);
              const SpectrumPullback pb = pullback(f, q);
              o.require(is_stable_equivalence(pb.to_c, grid), at + "the pulled back map is not a stable equivalence",
                        replay);
            }
          });
}

using Suite = void (*)(Context&, std::uint32_t);

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> s = {
      {"adjunction-triangles", adjunctions},
      {"cofibration-lifting", cofibration_lifting},
      {"degenerate-suspension", degenerate_suspension},
      {"iota-coincide", iota_coincide},
      {"rinf-level-equivalence", rinf},
      {"rinf-u-spectrum", rinf},
      {"s-map-stable-equivalence", s_map_stable},
      {"shift-suspension", shift_suspension},
      {"smash-monoidal", smash_monoidal},
      {"sphere-homotopy", sphere_homotopy},
      {"stabilization-agreement", stabilization_agreement},
      {"stable-fibration", stable_fibration},
      {"tensoring-comparison", tensoring_comparison},
      {"unit-interval", unit_interval},
  };
  return s;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

const std::vector<ClaimInfo>& claims() { return kClaims; }

bool VerificationReport::ok() const { return failures() == 0 && !entries.empty(); }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const ReportEntry& e) { return !e.pass; }));
}

std::string VerificationReport::table(bool timings) const {
  std::size_t wc = 5, wi = 8;
  for (const auto& e : entries) {
    wc = std::max(wc, e.claim.size());
    wi = std::max(wi, e.instance.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(wc)) << "claim" << "  " << std::setw(static_cast<int>(wi))
     << "instance" << "  verdict";
  if (timings) os << "  seconds";
  os << "\n";
  for (const auto& e : entries) {
    os << std::left << std::setw(static_cast<int>(wc)) << e.claim << "  " << std::setw(static_cast<int>(wi))
       << e.instance << "  " << std::setw(7) << (e.pass ? "pass" : "FAIL");
    if (timings) os << "  " << std::fixed << std::setprecision(3) << e.seconds;
    os << "\n";
    if (!e.pass) {
      os << "  reason: " << e.detail << "\n";
      os << "  replay: " << e.replay << "\n";
    }
  }
  os << failures() << " of " << entries.size() << " entries failed\n";
  return os.str();
}

std::string VerificationReport::json(bool timings) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j = {{"claim", e.claim}, {"statement", e.statement}, {"instance", e.instance},
                        {"verdict", e.pass ? "pass" : "fail"}};
    if (timings) j["seconds"] = e.seconds;
    if (!e.pass) {
      j["detail"] = e.detail;
      j["replay"] = nlohmann::json::parse(e.replay);
    }
    arr.push_back(j);
  }
  return nlohmann::json{{"ok", ok()}, {"entries", arr}}.dump(2) + "\n";
}

VerificationReport run_verification(const std::string& filter, const VerifyOptions& opts) {
  std::vector<std::string> wanted;
  if (filter.empty() || filter == "all") {
    for (const auto& c : kClaims) wanted.push_back(c.id);
  } else {
    wanted = split(filter);
  }
  // Claims sharing a suite run it once.
  std::vector<Suite> order;
  for (const auto& id : wanted) {
    const auto it = suites().find(id);
    if (it == suites().end()) throw std::invalid_argument("unknown claim: " + id);
    if (std::find(order.begin(), order.end(), it->second) == order.end()) order.push_back(it->second);
  }
  Context ctx(opts);
  for (Suite s : order) {
    for (std::uint32_t p : opts.primes) s(ctx, p);
  }
  VerificationReport report;
  for (auto& e : ctx.take()) {
    if (std::find(wanted.begin(), wanted.end(), e.claim) != wanted.end()) report.entries.push_back(std::move(e));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const ReportEntry& a, const ReportEntry& b) { return a.claim < b.claim; });
  return report;
}

}  // namespace stab
