#include "qmod/cache.hpp"

#include <charconv>
#include <cstdlib>

#include "qmod/catalog.hpp"
#include "qmod/errors.hpp"

namespace qmod {

std::shared_ptr<ExpansionCache::Entry> ExpansionCache::entry(std::string_view name) const {
  std::lock_guard lock(map_mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    it = entries_.emplace(std::string(name), std::make_shared<Entry>()).first;
  }
  return it->second;
}

QSeries ExpansionCache::get(std::string_view name, Exponent prec) {
  const CatalogEntry& spec = catalog_entry(name);
  if (prec > ceiling_) {
    throw PrecisionError("expansion of " + std::string(name) + " to O(q^" + std::to_string(prec) +
                         ") exceeds the precision ceiling " + std::to_string(ceiling_));
  }
  auto e = entry(name);
  std::lock_guard lock(e->mutex);
  if (!e->series || e->series->prec() < prec) {
    e->series = expand_recipe(spec.recipe, prec,
                              [this](std::string_view base, Exponent p) { return get(base, p); });
    ++expansions_;
  }
  return e->series->truncated(prec);
}

std::optional<Exponent> ExpansionCache::cached_precision(std::string_view name) const {
  auto e = entry(name);
  std::lock_guard lock(e->mutex);
  if (!e->series) return std::nullopt;
  return e->series->prec();
}

Exponent precision_ceiling_from_env() {
  const char* raw = std::getenv("QMOD_PREC_CEILING");
  if (raw == nullptr || *raw == '\0') return ExpansionCache::kDefaultCeiling;
  std::string_view text(raw);
  Exponent value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) {
    throw PreconditionError("QMOD_PREC_CEILING must be a positive decimal integer, got '" +
                            std::string(text) + "'");
  }
  return value;
}

}  // namespace qmod
