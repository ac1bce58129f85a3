#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stab/chain.hpp"

namespace stab {

struct VerifyOptions {
  std::uint64_t seed = 1;
  RandomSizes sizes{4, 3};
  std::vector<std::uint32_t> primes{2, 3};
  /// Name of a builtin spectrum to replace by corrupted() (negative control).
  std::string corrupt;
};

struct ReportEntry {
  std::string claim;
  std::string statement;
  std::string instance;
  bool pass = true;
  double seconds = 0;
  std::string detail;  // why the first failing instance failed
  std::string replay;  // JSON payload reproducing it, empty on success
};

struct VerificationReport {
  std::vector<ReportEntry> entries;  // sorted by claim id

  bool ok() const;
  std::size_t failures() const;
  /// A fixed-width table; times are included only when asked for so that
  /// reports are byte-identical across runs.
  std::string table(bool timings = false) const;
  std::string json(bool timings = false) const;
};

struct ClaimInfo {
  std::string id;
  std::string statement;
};
const std::vector<ClaimInfo>& claims();

/// Run the suites named in `filter` ("all", one claim id, or a
/// comma-separated list). Throws std::invalid_argument for unknown ids.
VerificationReport run_verification(const std::string& filter, const VerifyOptions& opts = {});

}  // namespace stab
