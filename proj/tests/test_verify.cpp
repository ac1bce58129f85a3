#include "doctest.h"
#include "json.hpp"
#include "stab/verify.hpp"

using namespace stab;

TEST_CASE("claims are listed and sorted") {
  const auto& cs = claims();
  CHECK(cs.size() == 14);
  for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i - 1].id < cs[i].id);
  CHECK_THROWS_AS(run_verification("no-such-claim"), std::invalid_argument);
}

TEST_CASE("verification is deterministic and passes") {
  const std::string filter = "sphere-homotopy,iota-coincide,unit-interval,shift-suspension";
  const VerificationReport a = run_verification(filter);
  const VerificationReport b = run_verification(filter);
  CHECK(a.ok());
  CHECK(a.table() == b.table());
  CHECK(a.json() == b.json());
  for (const char* id : {"sphere-homotopy", "iota-coincide", "unit-interval", "shift-suspension"}) {
    bool seen = false;
    for (const auto& e : a.entries) seen = seen || e.claim == id;
    CHECK_MESSAGE(seen, id);
  }
  for (std::size_t i = 1; i < a.entries.size(); ++i) CHECK(a.entries[i - 1].claim <= a.entries[i].claim);
}

TEST_CASE("a corrupted builtin is caught with a replay payload") {
  VerifyOptions opts;
  opts.corrupt = "sphere";
  const VerificationReport r = run_verification("sphere-homotopy", opts);
  CHECK_FALSE(r.ok());
  CHECK(r.failures() == r.entries.size());
  const auto replay = nlohmann::json::parse(r.entries.front().replay);
  CHECK(replay["claim"] == "sphere-homotopy");
  CHECK(replay["data"]["type"] == "spectrum");
  CHECK(r.table().find("FAIL") != std::string::npos);
}
