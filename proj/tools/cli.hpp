#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qmod::cli {

enum ExitCode : int { kAllPassed = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs one qmod invocation; args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// "2,5,11" or "auto:B". For auto, every prime <= B is returned and the
/// caller filters by eligibility. Throws PreconditionError.
struct PrimeSelection {
  std::vector<std::int64_t> primes;
  bool automatic = false;
};
PrimeSelection parse_primes(const std::string& spec);

/// Largest m with K p^(2m+1) + 1 <= ceiling, or nullopt if even m = 0 is too
/// large.
std::optional<int> default_m_max(std::int64_t p, std::int64_t coefficients, std::int64_t ceiling);

}  // namespace qmod::cli
