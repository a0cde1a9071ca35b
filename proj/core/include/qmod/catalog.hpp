#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmod/eta.hpp"
#include "qmod/qseries.hpp"

namespace qmod {

/// base (x) chi_disc, where base names another catalog entry.
struct TwistRecipe {
  std::string base;
  std::int64_t disc;
  friend bool operator==(const TwistRecipe&, const TwistRecipe&) = default;
};

using Recipe = std::variant<EtaQuotient, TwistRecipe>;

struct CatalogEntry {
  std::string name;
  std::int64_t level;
  Recipe recipe;
  /// Support is contained in residue + modulus * Z.
  std::int64_t support_residue;
  std::int64_t support_modulus;
};

/// One of the five CM elliptic curves whose weight-2 newform is an eta
/// quotient, together with the derivative G of its Weierstrass mock modular
/// form.
struct CurveSpec {
  std::int64_t level;
  std::int64_t cm_disc;                // -3 or -4
  std::string newform;                 // catalog name of g_N
  std::string mock_derivative;         // catalog name of G_N
  std::optional<Recipe> newform_twist; // second recipe for g_N, when one exists
  std::array<std::int64_t, 5> weierstrass;  // (a1, a2, a3, a4, a6)
};

std::span<const CatalogEntry> catalog_entries();
std::span<const CurveSpec> curves();

/// Throws UnknownFormError.
const CatalogEntry& catalog_entry(std::string_view name);
const CurveSpec& curve(std::int64_t level);

/// Expands a recipe to O(q^prec), normalized to leading coefficient 1.
/// Twist bases are looked up through `base`, which defaults to catalog_form.
using BaseLookup = std::function<QSeries(std::string_view, Exponent)>;
QSeries expand_recipe(const Recipe& recipe, Exponent prec, const BaseLookup& base = {});

/// Named form of the catalog: g27 g32 g36 g64 g144 G27 G32 G36 G64 G144 L1
/// L2 L36. Throws UnknownFormError.
QSeries catalog_form(std::string_view name, Exponent prec);

std::string recipe_to_string(const Recipe& recipe);

/// One record per line: name level [(delta,r),...] cm_disc (a1,a2,a3,a4,a6).
/// Auxiliary functions that belong to no curve print "-" for the last two
/// fields.
std::string catalog_manifest();

}  // namespace qmod
