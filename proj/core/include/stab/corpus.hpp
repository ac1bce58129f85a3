#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stab/spectra.hpp"
#include "stab/symmetric.hpp"

namespace stab {

template <class T>
struct Named {
  std::string name;
  T value;
};

/// Complexes: S, K (= S^1), S2, I, D1, D2, two (S^0 ⊕ S^1), zero.
std::optional<ChainComplex> builtin_complex(const std::string& name, std::uint32_t p);
std::vector<std::string> builtin_complex_names();

/// Spectra over K = S^1: sphere, F<n>S, F<n>K, FI, FD2, Ftwo, cone (S then
/// D^2 with a nonzero structure map), cofreeS (= R_1 S), twistS (F_0S ⊗ K).
std::optional<Spectrum> builtin_spectrum(const std::string& name, std::uint32_t p);
std::vector<std::string> builtin_spectrum_names();

/// Symmetric spectra over K = S^1 through the horizon: F<n>S, F<n>K, symK,
/// cofreeS (= R_1 S).
std::optional<SymmetricSpectrum> builtin_sym_spectrum(const std::string& name, std::uint32_t p,
                                                      int horizon);

/// Append a zero level to the stored data, so that every level above the old
/// tail vanishes; the result is a valid spectrum whose stable homotopy is
/// zero. Used as the negative control of the verification harness.
Spectrum corrupted(const Spectrum& x);

struct CorpusOptions {
  std::uint64_t seed = 1;
  RandomSizes sizes{4, 3};
  int max_tail = 3;
  std::size_t count = 20;
  std::string corrupt;  // builtin spectrum to replace by corrupted()
};

/// The builtins followed by seeded random members, `count` in total.
std::vector<Named<Spectrum>> spectrum_corpus(std::uint32_t p, const CorpusOptions& opts);
/// S, K, I, D2, two and seeded random complexes, `count` in total.
std::vector<Named<ChainComplex>> complex_corpus(std::uint32_t p, const CorpusOptions& opts);
std::vector<Named<SymmetricSpectrum>> sym_corpus(std::uint32_t p, int horizon,
                                                 const CorpusOptions& opts);

}  // namespace stab
