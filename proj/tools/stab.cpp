#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stab/corpus.hpp"
#include "stab/io.hpp"
#include "stab/oracle.hpp"
#include "stab/rectify.hpp"
#include "stab/spectra.hpp"
#include "stab/symmetric.hpp"
#include "stab/verify.hpp"

using nlohmann::json;
using namespace stab;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint32_t prime = 2;
  std::uint64_t seed = 1;
  int max_degree = 4;
  std::string json_out;
  bool timings = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool is_file(const std::string& s) { return std::filesystem::is_regular_file(s); }

ChainComplex load_complex(const std::string& src, std::uint32_t p) {
  if (is_file(src)) return complex_from_json(slurp(src));
  if (auto c = builtin_complex(src, p)) return *c;
  throw InputError("no file or builtin complex named '" + src + "'");
}

Spectrum load_spectrum(const std::string& src, std::uint32_t p) {
  if (is_file(src)) return spectrum_from_json(slurp(src));
  if (auto x = builtin_spectrum(src, p)) return *x;
  throw InputError("no file or builtin spectrum named '" + src + "'");
}

SymmetricSpectrum load_sym(const std::string& src, std::uint32_t p, int horizon) {
  if (is_file(src)) return sym_spectrum_from_json(slurp(src));
  if (auto x = builtin_sym_spectrum(src, p, horizon)) return *x;
  throw InputError("no file or builtin symmetric spectrum named '" + src + "'");
}

void write_json(const Globals& g, const json& j) {
  if (g.json_out.empty()) return;
  std::ofstream out(g.json_out);
  if (!out) throw InputError("cannot write " + g.json_out);
  out << j.dump(2) << "\n";
}

std::string joined(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

// -- commands ---------------------------------------------------------------

int cmd_homology(const Globals& g, const std::string& input, int from, int to) {
  const ChainComplex c = load_complex(input, g.prime);
  std::vector<std::size_t> hs;
  json rows = json::array();
  std::cout << "k  dim H_k\n";
  for (int k = from; k <= to; ++k) {
    const std::size_t h = homology(c, k);
    hs.push_back(h);
    std::cout << std::left << std::setw(3) << k << h << "\n";
    rows.push_back({{"k", k}, {"dim", h}});
  }
  std::cout << joined(hs) << "\n";
  write_json(g, {{"command", "homology"}, {"input", input}, {"prime", c.prime()}, {"homology", rows}});
  return kPass;
}

int cmd_stable_pi(const Globals& g, const std::string& input, int from, int to) {
  const Spectrum x = load_spectrum(input, g.prime);
  std::vector<std::size_t> vs;
  json rows = json::array();
  std::cout << "k   pi_k  stage\n";
  for (int k = from; k <= to; ++k) {
    const StablePi v = stable_pi(x, k);
    vs.push_back(v.value);
    std::cout << std::left << std::setw(4) << k << std::setw(6) << v.value << v.stage << "\n";
    rows.push_back({{"k", k}, {"pi", v.value}, {"stage", v.stage}});
  }
  std::cout << joined(vs) << "\n";
  write_json(g, {{"command", "stable-pi"}, {"input", input}, {"spectrum", json::parse(to_json(x))},
                 {"stable_pi", rows}});
  return kPass;
}

int cmd_smash(const Globals& g, const std::string& a, const std::string& b, int horizon) {
  const SymmetricSpectrum x = load_sym(a, g.prime, horizon);
  const SymmetricSpectrum y = load_sym(b, g.prime, horizon);
  const SymmetricSpectrum z = smash(x, y);
  std::cout << "level  dims of (X^Y)_n  homology\n";
  for (int n = 0; n <= z.horizon(); ++n) {
    const ChainComplex& c = z.space(n);
    std::cout << std::left << std::setw(7) << n << std::setw(18) << c.describe() << "("
              << joined(homology_dims(c, std::max(c.top(), 0))) << ")\n";
  }
  write_json(g, {{"command", "smash"}, {"left", a}, {"right", b}, {"smash", json::parse(to_json(z))}});
  return kPass;
}

int cmd_check_omega(const Globals& g, const std::string& input, int max_level, bool symmetric) {
  bool verdict = false;
  std::string kind;
  if (symmetric || (is_file(input) && json_type(slurp(input)) == "symmetric_spectrum")) {
    verdict = is_omega_spectrum(load_sym(input, g.prime, max_level), max_level);
    kind = "Omega-spectrum (symmetric)";
  } else {
    verdict = is_U_spectrum(load_spectrum(input, g.prime), max_level);
    kind = "U-spectrum";
  }
  std::cout << input << ": " << (verdict ? "is" : "is not") << " a " << kind << " through level "
            << max_level << "\n";
  write_json(g, {{"command", "check-omega"}, {"input", input}, {"kind", kind}, {"verdict", verdict}});
  return verdict ? kPass : kFail;
}

int cmd_check_cofib(const Globals& g, const std::string& input, bool oracle) {
  const std::string text = slurp(input);
  const std::string type = json_type(text);
  bool verdict = false;
  json out = {{"command", "check-cofib"}, {"input", input}};
  std::optional<LiftingVerdict> lv;
  if (type == "spectrum_map") {
    const SpectrumMap f = spectrum_map_from_json(text);
    verdict = is_projective_cofibration(f);
    if (oracle) lv = lifting_oracle(f);
  } else if (type == "sym_map") {
    const SymMap f = sym_map_from_json(text);
    verdict = is_sym_cofibration(f);
    if (oracle) lv = lifting_oracle(f);
  } else {
    throw InputError("check-cofib expects a spectrum_map or sym_map, got " + type);
  }
  std::cout << "criterion: " << (verdict ? "cofibration" : "not a cofibration") << "\n";
  out["cofibration"] = verdict;
  bool agree = true;
  if (lv) {
    std::cout << "lifting oracle: " << (lv->lifts ? "lifts" : "no lift") << " (" << lv->squares << " squares)";
    if (!lv->lifts) std::cout << ", obstruction: " << lv->obstruction;
    std::cout << "\n";
    agree = lv->lifts == verdict;
    if (!agree) std::cout << "DISAGREEMENT between criterion and oracle\n";
    out["oracle"] = {{"lifts", lv->lifts}, {"squares", lv->squares}, {"obstruction", lv->obstruction}};
  }
  write_json(g, out);
  return verdict && agree ? kPass : kFail;
}

int cmd_rectify(const Globals& g, const std::string& input, int top) {
  const Spectrum x = load_spectrum(input, g.prime);
  const auto cert = certify_symmetric(x.K());
  if (!cert) {
    std::cout << "K admits no symmetry certificate\n";
    return kFail;
  }
  if (top < 0) top = std::max(1, x.tail_index());
  const TensoringComparison c = compare_tensorings(x, *cert, top);
  std::cout << std::left << std::setw(7) << "level" << std::setw(24) << "FX" << std::setw(18) << "X(x)K(x)K"
            << "X(x)K(x)K twisted\n";
  for (int n = 0; n <= top; ++n) {
    std::cout << std::left << std::setw(7) << n << std::setw(24) << c.rect.c.level(n).describe() << std::setw(18)
              << c.no_twist.level(n).describe() << c.twist.level(n).describe() << "\n";
  }
  std::cout << "both legs level equivalences: " << (c.level_equivalences ? "yes" : "no") << "\n";
  write_json(g, {{"command", "rectify"},
                 {"input", input},
                 {"top", top},
                 {"level_equivalences", c.level_equivalences},
                 {"to_no_twist", json::parse(to_json(c.rect.h))},
                 {"to_twist", json::parse(to_json(c.rect.g))}});
  return c.level_equivalences ? kPass : kFail;
}

int cmd_compare(const Globals& g, const std::vector<std::string>& inputs, int from, int to) {
  bool agree = true;
  json rows = json::array();
  std::cout << "input  k   BF  symmetric\n";
  for (const auto& name : inputs) {
    const ChainComplex a = load_complex(name, g.prime);
    const ChainComplex k = ChainComplex::sphere(a.prime(), 1);
    const Spectrum bf = free_spectrum(0, a, k);
    const SymmetricSpectrum sym = free_sym(0, a, k, 3);
    for (int d = from; d <= to; ++d) {
      const std::size_t u = stable_pi(bf, d).value;
      const std::size_t v = naive_pi(sym, d).value;
      agree = agree && u == v;
      std::cout << std::left << std::setw(7) << name << std::setw(4) << d << std::setw(4) << u << v
                << (u == v ? "" : "  MISMATCH") << "\n";
      rows.push_back({{"input", name}, {"k", d}, {"bf", u}, {"symmetric", v}});
    }
  }
  write_json(g, {{"command", "compare-stabilizations"}, {"rows", rows}, {"agree", agree}});
  return agree ? kPass : kFail;
}

int cmd_verify(const Globals& g, const std::string& filter, const std::string& corrupt, bool primes_from_flag) {
  VerifyOptions opts;
  opts.seed = g.seed;
  opts.sizes.max_degree = g.max_degree;
  opts.corrupt = corrupt;
  if (primes_from_flag) opts.primes = {g.prime};
  const VerificationReport r = run_verification(filter, opts);
  std::cout << r.table(g.timings);
  if (!g.json_out.empty()) {
    std::ofstream out(g.json_out);
    if (!out) throw InputError("cannot write " + g.json_out);
    out << r.json(g.timings);
  }
  return r.ok() ? kPass : kFail;
}

int cmd_export(const Globals& g, const std::string& name, const std::string& kind, int horizon) {
  std::string text;
  if (kind == "complex") {
    text = to_json(load_complex(name, g.prime));
  } else if (kind == "spectrum") {
    text = to_json(load_spectrum(name, g.prime));
  } else if (kind == "symmetric") {
    text = to_json(load_sym(name, g.prime, horizon));
  } else {
    throw InputError("unknown kind '" + kind + "'");
  }
  std::cout << text << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable homotopy of spectra of chain complexes over F_p"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--prime", g.prime, "Field characteristic (2 or an odd prime)")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized instances")->capture_default_str();
  app.add_option("--max-degree", g.max_degree, "Maximal degree of random complexes")->capture_default_str();
  app.add_option("--json-out", g.json_out, "Also write the result as JSON to this path");
  app.add_flag("--timings", g.timings, "Include elapsed times in reports");

  std::string input, second;
  int from = 0, to = 2, horizon = 3, max_level = 4, top = -1;

  auto* homology_cmd = app.add_subcommand("homology", "Homology dimensions of a chain complex");
  homology_cmd->add_option("input", input, "JSON file or builtin complex")->required();
  homology_cmd->add_option("--from", from, "First degree")->capture_default_str();
  homology_cmd->add_option("--to", to, "Last degree")->capture_default_str();

  int pi_from = -3, pi_to = 3;
  auto* pi_cmd = app.add_subcommand("stable-pi", "Stable homotopy groups of a spectrum");
  pi_cmd->add_option("input", input, "JSON file or builtin spectrum")->required();
  pi_cmd->add_option("--from", pi_from, "First k")->capture_default_str();
  pi_cmd->add_option("--to", pi_to, "Last k")->capture_default_str();

  auto* smash_cmd = app.add_subcommand("smash", "Smash product of two symmetric spectra");
  smash_cmd->add_option("left", input, "JSON file or builtin symmetric spectrum")->required();
  smash_cmd->add_option("right", second, "JSON file or builtin symmetric spectrum")->required();
  smash_cmd->add_option("--horizon", horizon, "Horizon for builtins")->capture_default_str();

  bool symmetric = false;
  auto* omega_cmd = app.add_subcommand("check-omega", "U-spectrum / Omega-spectrum test");
  omega_cmd->add_option("input", input, "JSON file or builtin")->required();
  omega_cmd->add_option("--max-level", max_level, "Highest level probed")->capture_default_str();
  omega_cmd->add_flag("--symmetric", symmetric, "Treat a builtin name as a symmetric spectrum");

  bool oracle = false;
  auto* cofib_cmd = app.add_subcommand("check-cofib", "Cofibration test for a map of spectra");
  cofib_cmd->add_option("input", input, "JSON spectrum_map or sym_map")->required();
  cofib_cmd->add_flag("--oracle", oracle, "Cross-check against the exhaustive lifting oracle");

  auto* rectify_cmd = app.add_subcommand("rectify", "Compare the two tensorings of a spectrum with K⊗K");
  rectify_cmd->add_option("input", input, "JSON file or builtin spectrum")->required();
  rectify_cmd->add_option("--top", top, "Last level (default: max(tail index, 1))");

  std::vector<std::string> inputs;
  int cmp_from = -3, cmp_to = 3;
  auto* compare_cmd = app.add_subcommand("compare-stabilizations",
                                         "Homotopy groups of F_0A in spectra and symmetric spectra");
  compare_cmd->add_option("inputs", inputs, "JSON files or builtin complexes")->required();
  compare_cmd->add_option("--from", cmp_from, "First k")->capture_default_str();
  compare_cmd->add_option("--to", cmp_to, "Last k")->capture_default_str();

  std::string filter = "all", corrupt;
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
  verify_cmd->add_option("filter", filter, "'all', a claim id or a comma-separated list")->capture_default_str();
  verify_cmd->add_option("--corrupt-builtin", corrupt, "Replace a builtin spectrum by a corrupted copy");
  bool list = false;
  verify_cmd->add_flag("--list", list, "List claim ids and statements");

  std::string kind = "spectrum";
  auto* export_cmd = app.add_subcommand("export", "Print a builtin as JSON");
  export_cmd->add_option("name", input, "Builtin name")->required();
  export_cmd->add_option("--kind", kind, "complex, spectrum or symmetric")->capture_default_str();
  export_cmd->add_option("--horizon", horizon, "Horizon for symmetric spectra")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*homology_cmd) return cmd_homology(g, input, from, to);
    if (*pi_cmd) return cmd_stable_pi(g, input, pi_from, pi_to);
    if (*smash_cmd) return cmd_smash(g, input, second, horizon);
    if (*omega_cmd) return cmd_check_omega(g, input, max_level, symmetric);
    if (*cofib_cmd) return cmd_check_cofib(g, input, oracle);
    if (*rectify_cmd) return cmd_rectify(g, input, top);
    if (*compare_cmd) return cmd_compare(g, inputs, cmp_from, cmp_to);
    if (*export_cmd) return cmd_export(g, input, kind, horizon);
    if (*verify_cmd) {
      if (list) {
        for (const auto& c : claims()) std::cout << c.id << "\n  " << c.statement << "\n";
        return kPass;
      }
      return cmd_verify(g, filter, corrupt, app.get_option("--prime")->count() > 0);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnstableColimit& e) {
    std::cerr << "unstable colimit: " << e.what() << "\n";
    return kFail;
  }
  return kInputError;
}
