#pragma once

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "qmod/qseries.hpp"

namespace qmod {

/// Memoized catalog expansions shared by concurrent checks.
///
/// Each form is expanded at most once per precision increase; a request at
/// or below the cached precision is served by truncation. Requests above the
/// precision ceiling throw PrecisionError.
class ExpansionCache {
 public:
  static constexpr Exponent kDefaultCeiling = 1'000'000;

  explicit ExpansionCache(Exponent ceiling = kDefaultCeiling) : ceiling_(ceiling) {}
  ExpansionCache(const ExpansionCache&) = delete;
  ExpansionCache& operator=(const ExpansionCache&) = delete;

  QSeries get(std::string_view name, Exponent prec);
  /// Expands ahead of a fan-out so later get() calls only truncate.
  void reserve(std::string_view name, Exponent prec) { (void)get(name, prec); }

  Exponent ceiling() const noexcept { return ceiling_; }
  std::optional<Exponent> cached_precision(std::string_view name) const;
  /// Number of full expansions performed so far.
  std::size_t expansions() const noexcept { return expansions_.load(); }

 private:
  struct Entry {
    std::mutex mutex;
    std::optional<QSeries> series;
  };
  std::shared_ptr<Entry> entry(std::string_view name) const;

  Exponent ceiling_;
  mutable std::mutex map_mutex_;
  mutable std::map<std::string, std::shared_ptr<Entry>, std::less<>> entries_;
  std::atomic<std::size_t> expansions_{0};
};

/// Ceiling from QMOD_PREC_CEILING, or the default when unset.
/// Throws PreconditionError for a malformed value.
Exponent precision_ceiling_from_env();

}  // namespace qmod
