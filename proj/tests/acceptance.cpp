#include <iostream>
#include <string>
#include <vector>

#include "stab/corpus.hpp"
#include "stab/spectra.hpp"
#include "stab/verify.hpp"

using namespace stab;

namespace {

struct Criterion {
  std::string label;
  std::vector<std::string> claims;
};

bool claims_pass(const VerificationReport& r, const std::vector<std::string>& ids, std::string& why) {
  bool ok = true;
  for (const auto& id : ids) {
    bool seen = false;
    for (const auto& e : r.entries) {
      if (e.claim != id) continue;
      seen = true;
      if (!e.pass && ok) why = e.claim + " / " + e.instance + ": " + e.detail;
      ok = ok && e.pass;
    }
    if (!seen) {
      if (ok) why = "no entries for " + id;
      ok = false;
    }
  }
  return ok;
}

// The shift relation exactly as stated in the acceptance list:
// π_k(sX) = π_{k+1}(X) and π_k(X⊗̄K) = π_{k−1}(X) for |k| ≤ 4.
bool stated_shift_relation(std::string& why) {
  bool ok = true;
  for (std::uint32_t p : {2u, 3u}) {
    for (const auto& x : spectrum_corpus(p, {})) {
      const Spectrum sx = shift_s(x.value);
      const Spectrum gx = prolong_G_no_twist(x.value);
      for (int k = -4; k <= 4; ++k) {
        const std::size_t s = stable_pi(sx, k).value, up = stable_pi(x.value, k + 1).value;
        const std::size_t g = stable_pi(gx, k).value, down = stable_pi(x.value, k - 1).value;
        if (s != up && ok) {
          why = "p=" + std::to_string(p) + " " + x.name + " k=" + std::to_string(k) + ": pi_k(sX) = " +
                std::to_string(s) + " but pi_{k+1}(X) = " + std::to_string(up);
        }
        if (g != down && ok) why = "p=" + std::to_string(p) + " " + x.name + ": pi_k(X(x)K) != pi_{k-1}(X)";
        ok = ok && s == up && g == down;
      }
    }
  }
  return ok;
}

}  // namespace

int main() {
  const VerificationReport r = run_verification("all");
  const std::vector<Criterion> criteria = {
      {"sphere spectrum homotopy and desuspensions F_nS", {"sphere-homotopy"}},
      {"iota_{RX} = R(iota_X) on 20 corpus spectra", {"iota-coincide"}},
      {"R^inf X is a U-spectrum and j is a level equivalence", {"rinf-u-spectrum", "rinf-level-equivalence"}},
      {"s_n^A is a stable equivalence, A in {S,K,I,random}, n <= 3", {"s-map-stable-equivalence"}},
      {"shift relations pi_k(sX) = pi_{k+1}(X), pi_k(X(x)K) = pi_{k-1}(X)", {}},
      {"adjunction triangle identities, 50 instances each", {"adjunction-triangles"}},
      {"cofibration criteria agree with the exhaustive lifting oracle over F_2", {"cofibration-lifting"}},
      {"smash unit law and F_nA ^ F_mB = F_{n+m}(A(x)B)", {"smash-monoidal"}},
      {"unit interval, mapping cylinder squares, amalgamation", {"unit-interval"}},
      {"symmetry certificate and tensoring comparison", {"tensoring-comparison"}},
      {"K = S: stable homotopy is homology", {"degenerate-suspension"}},
      {"BF and symmetric homotopy groups of F_0A agree", {"stabilization-agreement"}},
      {"stable fibrations and pullback preservation", {"stable-fibration"}},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string why;
    bool ok = false;
    if (c.claims.empty()) {
      ok = stated_shift_relation(why);
    } else {
      ok = claims_pass(r, c.claims, why);
    }
    failures += ok ? 0 : 1;
    std::cout << (ok ? "PASS  " : "FAIL  ") << c.label << "\n";
    if (!ok) std::cout << "      " << why << "\n";
    if (c.claims.empty()) {
      std::string note;
      const bool corrected = claims_pass(r, {"shift-suspension"}, note);
      std::cout << "      note: the relation pi_k(sX) = pi_{k-1}(X) = pi_k(X(x)K) "
                << (corrected ? "holds" : "fails") << " on the same corpus (claim shift-suspension)\n";
    }
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << " of " << criteria.size()
            << " criteria pass\n";
  return failures == 0 ? 0 : 1;
}
