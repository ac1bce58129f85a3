#pragma once

#include <stdexcept>
#include <string>

#include "stab/chain.hpp"
#include "stab/spectra.hpp"
#include "stab/symmetric.hpp"

namespace stab {

/// Raised for malformed JSON or JSON of the wrong type.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every document is an object with a "type" field naming one of
// chain_complex, chain_map, spectrum, spectrum_map, sym_rep,
// symmetric_spectrum, sym_map. Matrices are lists of rows; their shapes are
// implied by the dimensions and checked on input.

std::string to_json(const ChainComplex& c);
std::string to_json(const ChainMap& f);
std::string to_json(const Spectrum& x);
std::string to_json(const SpectrumMap& f);
std::string to_json(const SymRep& r);
std::string to_json(const SymmetricSpectrum& x);
std::string to_json(const SymMap& f);

/// The "type" field of a document.
std::string json_type(const std::string& text);

ChainComplex complex_from_json(const std::string& text);
ChainMap chain_map_from_json(const std::string& text);
Spectrum spectrum_from_json(const std::string& text);
SpectrumMap spectrum_map_from_json(const std::string& text);
SymRep sym_rep_from_json(const std::string& text);
SymmetricSpectrum sym_spectrum_from_json(const std::string& text);
SymMap sym_map_from_json(const std::string& text);

}  // namespace stab
