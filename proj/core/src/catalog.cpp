#include "qmod/catalog.hpp"

#include <sstream>

#include "qmod/errors.hpp"
#include "qmod/operators.hpp"

namespace qmod {

namespace {

EtaQuotient eta(std::vector<EtaFactor> f, std::int64_t level) {
  return EtaQuotient(std::move(f), level);
}

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> table = {
      {"g27", 27, eta({{3, 2}, {9, 2}}, 27), 1, 3},
      {"g32", 32, eta({{4, 2}, {8, 2}}, 32), 1, 4},
      {"g36", 36, eta({{6, 4}}, 36), 1, 6},
      {"g64", 64, eta({{4, -2}, {8, 8}, {16, -2}}, 64), 1, 4},
      {"g144", 144, eta({{6, -4}, {12, 12}, {24, -4}}, 144), 1, 6},
      {"G27", 27, eta({{3, 1}, {9, 6}, {27, -3}}, 27), 2, 3},
      {"G32", 32, eta({{4, 2}, {16, 6}, {32, -4}}, 32), 3, 4},
      {"G36", 36, eta({{6, 3}, {12, 1}, {18, 3}, {36, -3}}, 36), 5, 6},
      {"G64", 64, TwistRecipe{"G32", 8}, 3, 4},
      {"G144", 144, TwistRecipe{"G36", 12}, 5, 6},
      {"L1", 27, eta({{3, -1}, {9, 4}, {27, -3}}, 27), 1, 3},
      {"L2", 27, eta({{3, 3}, {27, -3}}, 27), 0, 3},
      {"L36", 36, eta({{3, -1}, {6, 1}, {9, 3}, {18, -3}}, 36), 2, 3},
  };
  return table;
}

const std::vector<CurveSpec>& curve_table() {
  static const std::vector<CurveSpec> table = {
      {27, -3, "g27", "G27", std::nullopt, {0, 0, 1, 0, -7}},
      {32, -4, "g32", "G32", std::nullopt, {0, 0, 0, 4, 0}},
      {36, -3, "g36", "G36", std::nullopt, {0, 0, 0, 0, 1}},
      {64, -4, "g64", "G64", Recipe(TwistRecipe{"g32", 8}), {0, 0, 0, -4, 0}},
      {144, -3, "g144", "G144", Recipe(TwistRecipe{"g36", 12}), {0, 0, 0, 0, -1}},
  };
  return table;
}

const CurveSpec* curve_for_form(std::string_view name) {
  for (const auto& c : curve_table()) {
    if (c.newform == name || c.mock_derivative == name) return &c;
  }
  return nullptr;
}

}  // namespace

std::span<const CatalogEntry> catalog_entries() { return entries(); }
std::span<const CurveSpec> curves() { return curve_table(); }

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : entries()) {
    if (e.name == name) return e;
  }
  throw UnknownFormError("unknown form '" + std::string(name) + "'");
}

const CurveSpec& curve(std::int64_t level) {
  for (const auto& c : curve_table()) {
    if (c.level == level) return c;
  }
  throw UnknownFormError("no curve of conductor " + std::to_string(level));
}

QSeries expand_recipe(const Recipe& recipe, Exponent prec, const BaseLookup& base) {
  QSeries f = std::visit(
      [prec, &base](const auto& r) -> QSeries {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, EtaQuotient>) {
          return eta_quotient_expand(r, prec);
        } else {
          return twist(base ? base(r.base, prec) : catalog_form(r.base, prec), r.disc);
        }
      },
      recipe);
  if (!f.is_zero() && sgn(f.dense().front()) < 0) f = negate(f);
  return f;
}

QSeries catalog_form(std::string_view name, Exponent prec) {
  return expand_recipe(catalog_entry(name).recipe, prec);
}

std::string recipe_to_string(const Recipe& recipe) {
  if (const auto* eq = std::get_if<EtaQuotient>(&recipe)) return eq->to_string();
  const auto& t = std::get<TwistRecipe>(recipe);
  return "twist(" + t.base + "," + std::to_string(t.disc) + ")";
}

std::string catalog_manifest() {
  std::ostringstream os;
  auto tail = [&os](const CurveSpec* c) {
    if (c == nullptr) {
      os << " - -\n";
      return;
    }
    const auto& w = c->weierstrass;
    os << " " << c->cm_disc << " (" << w[0] << "," << w[1] << "," << w[2] << "," << w[3] << ","
       << w[4] << ")\n";
  };
  for (const auto& e : entries()) {
    os << e.name << " " << e.level << " " << recipe_to_string(e.recipe);
    tail(curve_for_form(e.name));
  }
  for (const auto& c : curve_table()) {
    if (!c.newform_twist) continue;
    os << c.newform << " " << c.level << " " << recipe_to_string(*c.newform_twist);
    tail(&c);
  }
  return os.str();
}

}  // namespace qmod
