#include "stab/io.hpp"

#include "json.hpp"

using nlohmann::json;

namespace stab {
namespace {

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from(const json& j, std::uint32_t p, std::size_t rows, std::size_t cols,
                   const std::string& what) {
  auto mismatch = [&](const std::string& got) {
    return ShapeError("dimension mismatch: " + what + " must be " + std::to_string(rows) + "x" +
                      std::to_string(cols) + ", got " + got);
  };
  if (!j.is_array()) throw ParseError(what + ": expected a list of rows");
  if (j.size() != rows) throw mismatch(std::to_string(j.size()) + " rows");
  std::vector<long long> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError(what + ": expected a list of rows");
    if (row.size() != cols) throw mismatch("a row of length " + std::to_string(row.size()));
    for (const auto& e : row) {
      if (!e.is_number_integer()) throw ParseError(what + ": entries must be integers");
      entries.push_back(e.get<long long>());
    }
  }
  return Matrix::from_entries(p, rows, cols, entries);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

const json& list_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be a list");
  return v;
}

std::uint32_t prime_of(const json& j) {
  const json& v = field(j, "prime");
  if (!v.is_number_unsigned()) throw ParseError("prime must be a positive integer");
  return v.get<std::uint32_t>();
}

void expect_type(const json& j, const char* type) {
  if (j.is_object() && j.contains("type") && j.at("type") != type) {
    throw ParseError(std::string("expected a ") + type + ", got " + j.at("type").dump());
  }
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

// -- chain level --------------------------------------------------------------

json complex_json(const ChainComplex& c) {
  json diff = json::array();
  for (int n = 0; n <= c.top(); ++n) diff.push_back(n == 0 ? json::array() : matrix_json(c.diff(n)));
  return {{"type", "chain_complex"}, {"prime", c.prime()}, {"dims", c.dims()}, {"diff", diff}};
}

ChainComplex complex_from(const json& j) {
  expect_type(j, "chain_complex");
  const std::uint32_t p = prime_of(j);
  std::vector<std::size_t> dims;
  for (const auto& d : list_field(j, "dims")) {
    if (!d.is_number_unsigned()) throw ParseError("dims must be non-negative integers");
    dims.push_back(d.get<std::size_t>());
  }
  const json& diff = list_field(j, "diff");
  if (diff.size() != dims.size()) {
    throw ShapeError("dimension mismatch: diff has " + std::to_string(diff.size()) +
                     " entries for " + std::to_string(dims.size()) + " degrees");
  }
  std::vector<Matrix> diffs;
  for (std::size_t n = 0; n < dims.size(); ++n) {
    const std::size_t rows = n == 0 ? 0 : dims[n - 1];
    diffs.push_back(matrix_from(diff[n], p, rows, dims[n], "d_" + std::to_string(n)));
  }
  return ChainComplex(p, dims, diffs);
}

json mats_json(const ChainMap& f) {
  json mats = json::array();
  for (int n = 0; n <= f.top(); ++n) mats.push_back(matrix_json(f.mat(n)));
  return mats;
}

ChainMap map_from_mats(const json& mats, const ChainComplex& s, const ChainComplex& t,
                       const std::string& what) {
  if (!mats.is_array()) throw ParseError(what + ": expected a list of matrices");
  const std::size_t count = static_cast<std::size_t>(std::max(s.top(), t.top()) + 1);
  if (mats.size() != count) {
    throw ShapeError("dimension mismatch: " + what + " needs " + std::to_string(count) +
                     " components, got " + std::to_string(mats.size()));
  }
  std::vector<Matrix> ms;
  for (std::size_t n = 0; n < count; ++n) {
    const int d = static_cast<int>(n);
    ms.push_back(matrix_from(mats[n], s.prime(), t.dim(d), s.dim(d),
                             what + " in degree " + std::to_string(n)));
  }
  return ChainMap(s, t, ms);
}

json chain_map_json(const ChainMap& f) {
  return {{"type", "chain_map"},
          {"source", complex_json(f.source())},
          {"target", complex_json(f.target())},
          {"mats", mats_json(f)}};
}

ChainMap chain_map_from(const json& j) {
  expect_type(j, "chain_map");
  return map_from_mats(field(j, "mats"), complex_from(field(j, "source")),
                       complex_from(field(j, "target")), "chain map");
}

// -- spectra ------------------------------------------------------------------

json spectrum_json(const Spectrum& x) {
  json levels = json::array();
  json sigmas = json::array();
  for (const auto& l : x.stored_levels()) levels.push_back(complex_json(l));
  for (const auto& s : x.stored_sigmas()) sigmas.push_back(mats_json(s));
  return {{"type", "spectrum"},       {"K", complex_json(x.K())},
          {"levels", levels},         {"sigmas", sigmas},
          {"tail_scalar", x.tail_scalar()}, {"truncated", x.is_truncated()}};
}

Spectrum spectrum_from(const json& j) {
  expect_type(j, "spectrum");
  const ChainComplex k = complex_from(field(j, "K"));
  std::vector<ChainComplex> levels;
  for (const auto& l : list_field(j, "levels")) levels.push_back(complex_from(l));
  const json& sj = list_field(j, "sigmas");
  if (levels.empty() || sj.size() + 1 != levels.size()) {
    throw ShapeError("dimension mismatch: a spectrum with " + std::to_string(levels.size()) +
                     " levels needs " + std::to_string(levels.empty() ? 0 : levels.size() - 1) +
                     " structure maps");
  }
  std::vector<ChainMap> sigmas;
  for (std::size_t n = 0; n < sj.size(); ++n) {
    sigmas.push_back(map_from_mats(sj[n], tensor(levels[n], k), levels[n + 1],
                                   "structure map " + std::to_string(n)));
  }
  const bool truncated = j.contains("truncated") && j.at("truncated").get<bool>();
  if (truncated) return Spectrum::truncated(k, levels, sigmas);
  const long long c = j.contains("tail_scalar") ? j.at("tail_scalar").get<long long>() : 1;
  return Spectrum(k, levels, sigmas, c);
}

json spectrum_map_json(const SpectrumMap& f) {
  json comps = json::array();
  for (const auto& c : f.stored_comps()) comps.push_back(mats_json(c));
  return {{"type", "spectrum_map"},
          {"source", spectrum_json(f.source())},
          {"target", spectrum_json(f.target())},
          {"comps", comps}};
}

SpectrumMap spectrum_map_from(const json& j) {
  expect_type(j, "spectrum_map");
  const Spectrum s = spectrum_from(field(j, "source"));
  const Spectrum t = spectrum_from(field(j, "target"));
  std::vector<ChainMap> comps;
  const json& cj = list_field(j, "comps");
  for (std::size_t n = 0; n < cj.size(); ++n) {
    const int lv = static_cast<int>(n);
    comps.push_back(map_from_mats(cj[n], s.level(lv), t.level(lv),
                                  "component " + std::to_string(n)));
  }
  return SpectrumMap(s, t, comps);
}

// -- symmetric spectra --------------------------------------------------------

json sym_rep_json(const SymRep& r) {
  json gens = json::array();
  for (const auto& g : r.gens()) gens.push_back(mats_json(g));
  return {{"type", "sym_rep"}, {"arity", r.arity()}, {"space", complex_json(r.space())}, {"gens", gens}};
}

SymRep sym_rep_from(const json& j) {
  expect_type(j, "sym_rep");
  const json& a = field(j, "arity");
  if (!a.is_number_unsigned()) throw ParseError("arity must be a non-negative integer");
  const ChainComplex space = complex_from(field(j, "space"));
  std::vector<ChainMap> gens;
  const json& gj = list_field(j, "gens");
  for (std::size_t i = 0; i < gj.size(); ++i) {
    gens.push_back(map_from_mats(gj[i], space, space, "generator " + std::to_string(i)));
  }
  return SymRep(a.get<int>(), space, gens);
}

json sym_spectrum_json(const SymmetricSpectrum& x) {
  json levels = json::array();
  json sigmas = json::array();
  for (const auto& l : x.levels()) levels.push_back(sym_rep_json(l));
  for (int n = 0; n < x.horizon(); ++n) sigmas.push_back(mats_json(x.sigma(n)));
  return {{"type", "symmetric_spectrum"}, {"K", complex_json(x.K())}, {"levels", levels},
          {"sigmas", sigmas}};
}

SymmetricSpectrum sym_spectrum_from(const json& j) {
  expect_type(j, "symmetric_spectrum");
  const ChainComplex k = complex_from(field(j, "K"));
  std::vector<SymRep> levels;
  for (const auto& l : list_field(j, "levels")) levels.push_back(sym_rep_from(l));
  const json& sj = list_field(j, "sigmas");
  if (levels.empty() || sj.size() + 1 != levels.size()) {
    throw ShapeError("dimension mismatch: a symmetric spectrum with " +
                     std::to_string(levels.size()) + " levels needs one structure map fewer");
  }
  std::vector<ChainMap> sigmas;
  for (std::size_t n = 0; n < sj.size(); ++n) {
    sigmas.push_back(map_from_mats(sj[n], tensor(levels[n].space(), k), levels[n + 1].space(),
                                   "structure map " + std::to_string(n)));
  }
  return SymmetricSpectrum(k, levels, sigmas);
}

json sym_map_json(const SymMap& f) {
  json comps = json::array();
  for (const auto& c : f.comps()) comps.push_back(mats_json(c));
  return {{"type", "sym_map"},
          {"source", sym_spectrum_json(f.source())},
          {"target", sym_spectrum_json(f.target())},
          {"comps", comps}};
}

SymMap sym_map_from(const json& j) {
  expect_type(j, "sym_map");
  const SymmetricSpectrum s = sym_spectrum_from(field(j, "source"));
  const SymmetricSpectrum t = sym_spectrum_from(field(j, "target"));
  std::vector<ChainMap> comps;
  const json& cj = list_field(j, "comps");
  const int h = std::min(s.horizon(), t.horizon());
  if (static_cast<int>(cj.size()) != h + 1) {
    throw ShapeError("dimension mismatch: symmetric map needs " + std::to_string(h + 1) +
                     " components");
  }
  for (int n = 0; n <= h; ++n) {
    comps.push_back(map_from_mats(cj[static_cast<std::size_t>(n)], s.space(n), t.space(n),
                                  "component " + std::to_string(n)));
  }
  return SymMap(s, t, comps);
}

template <class T, class F>
T read_as(const std::string& text, F from) {
  const json j = parse(text);
  try {
    return from(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("ill-typed JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const ChainComplex& c) { return complex_json(c).dump(); }
std::string to_json(const ChainMap& f) { return chain_map_json(f).dump(); }
std::string to_json(const Spectrum& x) { return spectrum_json(x).dump(); }
std::string to_json(const SpectrumMap& f) { return spectrum_map_json(f).dump(); }
std::string to_json(const SymRep& r) { return sym_rep_json(r).dump(); }
std::string to_json(const SymmetricSpectrum& x) { return sym_spectrum_json(x).dump(); }
std::string to_json(const SymMap& f) { return sym_map_json(f).dump(); }

std::string json_type(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ParseError("document has no \"type\" field");
  }
  return j.at("type").get<std::string>();
}

ChainComplex complex_from_json(const std::string& text) {
  return read_as<ChainComplex>(text, complex_from);
}
ChainMap chain_map_from_json(const std::string& text) {
  return read_as<ChainMap>(text, chain_map_from);
}
Spectrum spectrum_from_json(const std::string& text) {
  return read_as<Spectrum>(text, spectrum_from);
}
SpectrumMap spectrum_map_from_json(const std::string& text) {
  return read_as<SpectrumMap>(text, spectrum_map_from);
}
SymRep sym_rep_from_json(const std::string& text) { return read_as<SymRep>(text, sym_rep_from); }
SymmetricSpectrum sym_spectrum_from_json(const std::string& text) {
  return read_as<SymmetricSpectrum>(text, sym_spectrum_from);
}
SymMap sym_map_from_json(const std::string& text) { return read_as<SymMap>(text, sym_map_from); }

}  // namespace stab
