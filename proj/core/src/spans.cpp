#include "qmod/spans.hpp"

#include <algorithm>
#include <functional>

#include "qmod/catalog.hpp"
#include "qmod/errors.hpp"

namespace qmod {

namespace {

const EtaQuotient& recipe_of(std::string_view name) {
  return std::get<EtaQuotient>(catalog_entry(name).recipe);
}

// Runs build(P) with P growing until every produced series reaches prec.
// Precision loss in a product chain is independent of P, so one correction
// step normally suffices.
template <typename Build>
auto with_enough_precision(Exponent prec, Exponent guess, Build&& build) {
  Exponent internal = std::max(guess, prec);
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto out = build(internal);
    Exponent worst = internal;
    for (const auto& s : out.series()) worst = std::min(worst, s.prec());
    if (worst >= prec) return out;
    internal += (prec - worst);
  }
  throw PrecisionError("could not reach the requested precision");
}

struct Generated {
  std::vector<FamilyMember> members;
  std::vector<QSeries> series() const {
    std::vector<QSeries> out;
    for (const auto& m : members) out.push_back(m.series);
    return out;
  }
};

void require_level(std::int64_t level) {
  if (level != 27 && level != 36) {
    throw PreconditionError("spanning families exist for levels 27 and 36 only");
  }
}

}  // namespace

std::vector<FamilyMember> spanning_family(std::int64_t level, std::int64_t max_pole,
                                          Exponent prec) {
  require_level(level);
  if (max_pole < 1) throw PreconditionError("max_pole must be positive");
  if (prec < (level == 27 ? 2 : 3)) {
    throw PreconditionError("spanning family precision too small");
  }

  auto build = [&](Exponent internal) {
    Generated out;
    if (level == 27) {
      const EtaQuotient& g = recipe_of("g27");
      const EtaQuotient& l1 = recipe_of("L1");
      const EtaQuotient& l2 = recipe_of("L2");
      QSeries gs = eta_quotient_expand(g, internal);
      QSeries l1s = eta_quotient_expand(l1, internal);
      QSeries l2s = eta_quotient_expand(l2, internal);
      // g L1^d and g L1^d L2 for d = 0, 1, ... while the pole stays in range.
      QSeries with_power = gs;
      EtaQuotient with_power_recipe = g;
      for (std::int64_t d = 0;; ++d) {
        EtaQuotient r1 = with_power_recipe;
        EtaQuotient r2 = with_power_recipe * l2;
        bool any = false;
        if (r1.shift() >= -max_pole) {
          out.members.push_back({"g27*L1^" + std::to_string(d), r1, with_power});
          any = true;
        }
        if (r2.shift() >= -max_pole) {
          out.members.push_back({"g27*L1^" + std::to_string(d) + "*L2", r2, mul(with_power, l2s)});
          any = true;
        }
        if (!any) break;
        with_power = mul(with_power, l1s);
        with_power_recipe = with_power_recipe * l1;
      }
    } else {
      const EtaQuotient& g = recipe_of("g36");
      EtaQuotient l2z = recipe_of("L36").rescaled(2);
      QSeries gs = eta_quotient_expand(g, internal);
      QSeries ls = eta_quotient_expand(l2z, internal);
      QSeries with_power = gs;
      EtaQuotient recipe = g;
      for (std::int64_t d = 0; recipe.shift() >= -max_pole; ++d) {
        out.members.push_back({"g36*L(2z)^" + std::to_string(d), recipe, with_power});
        with_power = mul(with_power, ls);
        recipe = recipe * l2z;
      }
    }
    return out;
  };
  return with_enough_precision(prec, prec + 2 * max_pole + 8, build).members;
}

EchelonBasis::EchelonBasis(std::vector<QSeries> rows) : rows_(std::move(rows)) {}

const QSeries* EchelonBasis::row_with_pivot(Exponent e) const {
  for (const auto& r : rows_) {
    if (r.order() == e) return &r;
  }
  return nullptr;
}

std::vector<Exponent> EchelonBasis::pivots() const {
  std::vector<Exponent> out;
  for (const auto& r : rows_) out.push_back(r.order());
  return out;
}

EchelonBasis echelonize(std::vector<QSeries> family) {
  // Most negative leading exponent first; ties broken by a total order on
  // the coefficients so the pass is deterministic.
  std::sort(family.begin(), family.end(), [](const QSeries& a, const QSeries& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    if (a.prec() != b.prec()) return a.prec() < b.prec();
    auto ad = a.dense();
    auto bd = b.dense();
    return std::lexicographical_compare(ad.begin(), ad.end(), bd.begin(), bd.end());
  });

  std::map<Exponent, QSeries> pivots;
  for (QSeries row : family) {
    while (!row.is_zero()) {
      Exponent e = row.order();
      Integer lead = row.dense().front();
      auto it = pivots.find(e);
      if (it != pivots.end()) {
        row = sub(row, scale(it->second, lead));
        continue;
      }
      if (lead == -1) {
        row = negate(row);
      } else if (lead != 1) {
        throw EliminationError("non-unit pivot " + lead.get_str() + " at exponent " +
                                   std::to_string(e),
                               e);
      }
      pivots.emplace(e, std::move(row));
      break;
    }
  }

  // Back substitution, highest pivot first: rows above are already reduced,
  // so clearing in increasing exponent order never reintroduces an entry.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    QSeries& row = it->second;
    for (auto above = pivots.upper_bound(it->first); above != pivots.end(); ++above) {
      if (above->first >= row.prec()) break;
      Integer c = row.coefficient(above->first);
      if (sgn(c) != 0) row = sub(row, scale(above->second, c));
    }
  }

  std::vector<QSeries> rows;
  for (auto& [e, r] : pivots) rows.push_back(std::move(r));
  return EchelonBasis(std::move(rows));
}

QSeries build_H(std::int64_t level, std::int64_t m, Exponent prec) {
  require_level(level);
  if (m < -1) throw UnconstructibleError("H_m needs m >= -1");
  if (level == 27 && m == 0) throw UnconstructibleError("H_0 does not exist at level 27");
  if (level == 36 && m % 2 == 0) throw UnconstructibleError("H_m at level 36 needs odd m");
  Exponent zero_through = level == 27 ? 1 : 2;
  if (prec <= zero_through) {
    throw PreconditionError("build_H: precision must exceed " + std::to_string(zero_through));
  }

  std::vector<QSeries> family;
  for (auto& member : spanning_family(level, std::max<std::int64_t>(m, 1), prec)) {
    family.push_back(std::move(member.series));
  }
  EchelonBasis basis = echelonize(std::move(family));
  const QSeries* row = basis.row_with_pivot(-m);
  if (row == nullptr) {
    throw UnconstructibleError("no form with principal part q^" + std::to_string(-m));
  }
  for (Exponent e = -m + 1; e <= zero_through; ++e) {
    if (sgn(row->coefficient(e)) != 0) {
      throw EliminationError("H_" + std::to_string(m) + " has a nonzero coefficient at q^" +
                                 std::to_string(e),
                             e);
    }
  }
  return row->truncated(prec);
}

QSeries psi2_level36(Exponent prec) {
  return eta_quotient_expand(recipe_of("L36").rescaled(2), prec);
}

QSeries psi3_level36(Exponent prec) {
  // L(z) L(2z) has order -3, so L(z) needs 2 extra terms and L(2z) needs 1.
  QSeries lz = eta_quotient_expand(recipe_of("L36"), prec + 2);
  QSeries l2z = psi2_level36(prec + 1);
  return sub(mul(lz, l2z), QSeries::one(prec)).truncated(prec);
}

QSeries build_psi(std::int64_t level, std::int64_t p, Exponent prec) {
  require_level(level);
  if (!is_prime(p)) throw UnconstructibleError(std::to_string(p) + " is not prime");
  const std::int64_t modulus = level == 27 ? 3 : 6;
  const std::int64_t residue = level == 27 ? 2 : 5;
  if (p % modulus != residue) {
    throw UnconstructibleError("psi_p at level " + std::to_string(level) + " needs p = " +
                               std::to_string(residue) + " mod " + std::to_string(modulus));
  }
  const Exponent normal_form_end = level == 27 ? 4 : 7;

  // Generators with poles 2 and 3. A monomial A^a B^b has pole 2a + 3b and
  // lives on exponents -(2a + 3b) mod modulus; keep one monomial per pole in
  // the class of -p, choosing the smallest b.
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> monomials;
  for (std::int64_t b = 0; 3 * b <= p; ++b) {
    for (std::int64_t a = 0; 2 * a + 3 * b <= p; ++a) {
      std::int64_t pole = 2 * a + 3 * b;
      if (pole == 0 || pole % modulus != residue) continue;
      monomials.try_emplace(pole, a, b);
    }
  }

  struct Rows {
    std::vector<QSeries> rows;
    const std::vector<QSeries>& series() const { return rows; }
  };
  auto build = [&](Exponent internal) {
    QSeries gen_a = level == 27 ? catalog_form("L1", internal) : psi2_level36(internal);
    QSeries gen_b = level == 27 ? catalog_form("L2", internal) : psi3_level36(internal);
    Rows out;
    for (const auto& [pole, ab] : monomials) {
      auto [a, b] = ab;
      QSeries term = QSeries::one(internal);
      if (a > 0) term = mul(term, pow(gen_a, a));
      if (b > 0) term = mul(term, pow(gen_b, b));
      out.rows.push_back(std::move(term));
    }
    return out;
  };
  Exponent target = std::max(prec, normal_form_end);
  Rows rows = with_enough_precision(target, target + 2 * p + 8, build);

  EchelonBasis basis = echelonize(std::move(rows.rows));
  const QSeries* row = basis.row_with_pivot(-p);
  if (row == nullptr) throw UnconstructibleError("no monomial reaches pole " + std::to_string(p));
  for (Exponent e = -p + 1; e < normal_form_end; ++e) {
    if (e == 1) continue;
    if (sgn(row->coefficient(e)) != 0) {
      throw EliminationError("psi_" + std::to_string(p) + " has a nonzero coefficient at q^" +
                                 std::to_string(e),
                             e);
    }
  }
  return row->truncated(prec);
}

}  // namespace qmod
