#include "stab/corpus.hpp"

#include <random>
#include <regex>

namespace stab {
namespace {

ChainComplex suspension(std::uint32_t p) { return ChainComplex::sphere(p, 1); }

// S in degree 0, then D^2 receiving S ⊗ K onto its bottom cell.
Spectrum cone_spectrum(std::uint32_t p) {
  const ChainComplex k = suspension(p);
  const ChainComplex s = ChainComplex::unit(p);
  const ChainComplex d2 = ChainComplex::disk(p, 2);
  const ChainComplex sk = tensor(s, k);
  const ChainMap sigma(sk, d2, {Matrix(p, 0, 0), Matrix::identity(p, 1), Matrix(p, 1, 0)});
  return Spectrum(k, {s, d2}, {sigma});
}

int small_index(const std::smatch& m) { return std::stoi(m[1].str()); }

}  // namespace

std::optional<ChainComplex> builtin_complex(const std::string& name, std::uint32_t p) {
  if (name == "S") return ChainComplex::unit(p);
  if (name == "K") return ChainComplex::sphere(p, 1);
  if (name == "S2") return ChainComplex::sphere(p, 2);
  if (name == "I") return ChainComplex::interval(p);
  if (name == "D1") return ChainComplex::disk(p, 1);
  if (name == "D2") return ChainComplex::disk(p, 2);
  if (name == "two") return ChainComplex(p, {1, 1}, {Matrix(p, 1, 1)});
  if (name == "zero") return ChainComplex::zero(p);
  return std::nullopt;
}

std::vector<std::string> builtin_complex_names() { return {"S", "K", "S2", "I", "D1", "D2", "two", "zero"}; }

std::optional<Spectrum> builtin_spectrum(const std::string& name, std::uint32_t p) {
  const ChainComplex k = suspension(p);
  static const std::regex free_s("F([0-9])S");
  static const std::regex free_k("F([0-9])K");
  std::smatch m;
  if (name == "sphere") return free_spectrum(0, ChainComplex::unit(p), k);
  if (std::regex_match(name, m, free_s)) return free_spectrum(small_index(m), ChainComplex::unit(p), k);
  if (std::regex_match(name, m, free_k)) return free_spectrum(small_index(m), k, k);
  if (name == "FI") return free_spectrum(0, ChainComplex::interval(p), k);
  if (name == "FD2") return free_spectrum(0, ChainComplex::disk(p, 2), k);
  if (name == "Ftwo") return free_spectrum(0, *builtin_complex("two", p), k);
  if (name == "cone") return cone_spectrum(p);
  if (name == "cofreeS") return cofree(1, ChainComplex::unit(p), k);
  if (name == "twistS") return tensor_K_twist(free_spectrum(0, ChainComplex::unit(p), k));
  return std::nullopt;
}

std::vector<std::string> builtin_spectrum_names() {
  return {"sphere", "F1S", "F2S", "F3S", "F1K", "FI", "FD2", "Ftwo", "cone", "cofreeS", "twistS"};
}

std::optional<SymmetricSpectrum> builtin_sym_spectrum(const std::string& name, std::uint32_t p,
                                                      int horizon) {
  const ChainComplex k = suspension(p);
  static const std::regex free_s("F([0-9])S");
  static const std::regex free_k("F([0-9])K");
  std::smatch m;
  if (name == "sphere") return free_sym(0, ChainComplex::unit(p), k, horizon);
  if (std::regex_match(name, m, free_s)) return free_sym(small_index(m), ChainComplex::unit(p), k, horizon);
  if (std::regex_match(name, m, free_k)) return free_sym(small_index(m), k, k, horizon);
  if (name == "symK") return sym_K(k, horizon);
  if (name == "cofreeS") return cofree_sym(1, ChainComplex::unit(p), k, horizon);
  return std::nullopt;
}

Spectrum corrupted(const Spectrum& x) {
  std::vector<ChainComplex> levels = x.stored_levels();
  std::vector<ChainMap> sigmas = x.stored_sigmas();
  const ChainComplex zero = ChainComplex::zero(x.prime());
  sigmas.push_back(ChainMap::zero(tensor(levels.back(), x.K()), zero));
  levels.push_back(zero);
  return Spectrum(x.K(), levels, sigmas);
}

std::vector<Named<Spectrum>> spectrum_corpus(std::uint32_t p, const CorpusOptions& opts) {
  std::vector<Named<Spectrum>> out;
  for (const auto& name : builtin_spectrum_names()) {
    if (out.size() >= opts.count) break;
    Spectrum x = *builtin_spectrum(name, p);
    if (name == opts.corrupt) x = corrupted(x);
    out.push_back({name, x});
  }
  std::mt19937_64 rng(opts.seed * 1000003u + p);
  const ChainComplex k = suspension(p);
  for (int i = 0; out.size() < opts.count; ++i) {
    out.push_back({"random#" + std::to_string(i), random_spectrum(k, rng, {opts.sizes, opts.max_tail})});
  }
  return out;
}

std::vector<Named<ChainComplex>> complex_corpus(std::uint32_t p, const CorpusOptions& opts) {
  std::vector<Named<ChainComplex>> out;
  for (const char* name : {"S", "K", "I", "D2", "two"}) {
    if (out.size() >= opts.count) break;
    out.push_back({name, *builtin_complex(name, p)});
  }
  std::mt19937_64 rng(opts.seed * 1000033u + p);
  for (int i = 0; out.size() < opts.count; ++i) {
    out.push_back({"random#" + std::to_string(i), random_complex(p, rng, opts.sizes)});
  }
  return out;
}

std::vector<Named<SymmetricSpectrum>> sym_corpus(std::uint32_t p, int horizon, const CorpusOptions& opts) {
  std::vector<Named<SymmetricSpectrum>> out;
  for (const char* name : {"sphere", "F1S", "F2S", "F1K", "symK", "cofreeS"}) {
    if (out.size() >= opts.count) break;
    out.push_back({name, *builtin_sym_spectrum(name, p, horizon)});
  }
  std::mt19937_64 rng(opts.seed * 1000037u + p);
  const ChainComplex k = suspension(p);
  const RandomSizes small{std::min(opts.sizes.max_degree, 2), std::min<std::size_t>(opts.sizes.max_dim, 2)};
  for (int i = 0; out.size() < opts.count; ++i) {
    out.push_back({"random#" + std::to_string(i), random_sym_spectrum(k, rng, horizon, small)});
  }
  return out;
}

}  // namespace stab
