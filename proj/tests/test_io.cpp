#include <random>

#include "doctest.h"
#include "stab/corpus.hpp"
#include "stab/io.hpp"

using namespace stab;

TEST_CASE("json round trips") {
  for (std::uint32_t p : {2u, 3u}) {
    for (const auto& name : builtin_complex_names()) {
      const ChainComplex c = *builtin_complex(name, p);
      CHECK(complex_from_json(to_json(c)) == c);
      CHECK(to_json(complex_from_json(to_json(c))) == to_json(c));
    }
    for (const auto& x : spectrum_corpus(p, {})) {
      CHECK(spectrum_from_json(to_json(x.value)) == x.value);
      const SpectrumMap id = SpectrumMap::identity(x.value);
      CHECK(spectrum_map_from_json(to_json(id)) == id);
    }
    for (const auto& x : sym_corpus(p, 3, {})) {
      CHECK(sym_spectrum_from_json(to_json(x.value)) == x.value);
      const SymMap id = SymMap::identity(x.value);
      CHECK(sym_map_from_json(to_json(id)) == id);
      CHECK(to_json(sym_rep_from_json(to_json(x.value.level(2)))) == to_json(x.value.level(2)));
    }
    std::mt19937_64 rng(p);
    const ChainComplex a = random_complex(p, rng, {4, 3});
    const ChainComplex b = random_complex(p, rng, {4, 3});
    const ChainMap f = random_chain_map(a, b, rng);
    CHECK(chain_map_from_json(to_json(f)) == f);
    const Spectrum t = Spectrum::truncated(ChainComplex::sphere(p, 1), {a}, {});
    CHECK(spectrum_from_json(to_json(t)) == t);
  }
}

TEST_CASE("json errors") {
  CHECK_THROWS_AS(complex_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(complex_from_json(R"({"type":"spectrum"})"), ParseError);
  CHECK_THROWS_AS(json_type("[1,2]"), ParseError);
  // d_1 has the wrong shape.
  CHECK_THROWS_WITH_AS(complex_from_json(R"({"type":"chain_complex","prime":2,"dims":[1,1],"diff":[[],[[1],[1]]]})"),
                       doctest::Contains("dimension mismatch"), ShapeError);
  // d∘d ≠ 0 names the degree.
  CHECK_THROWS_WITH_AS(complex_from_json(R"({"type":"chain_complex","prime":2,"dims":[1,1,1],"diff":[[],[[1]],[[1]]]})"),
                       doctest::Contains("d_2"), ValidationError);
}
