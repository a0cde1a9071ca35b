#include "qmod/verify.hpp"

#include "qmod/errors.hpp"
#include "qmod/operators.hpp"
#include "qmod/spans.hpp"

namespace qmod {

namespace {

Integer power(std::int64_t p, std::int64_t k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

Integer mod_positive(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
}

void require_eligible(const CurveSpec& curve, std::int64_t p) {
  require_prime(p);
  if (auto why = ineligibility_reason(curve, p)) {
    throw PreconditionError("p = " + std::to_string(p) + " for curve " +
                            std::to_string(curve.level) + ": " + *why);
  }
}

// psi_p exists for p = 2 mod 3 at level 27 and p = 5 mod 6 at level 36.
void require_psi_class(std::int64_t level, std::int64_t p) {
  require_prime(p);
  if (level == 27 && p % 3 == 2) return;
  if (level == 36 && p % 6 == 5) return;
  if (level != 27 && level != 36) throw PreconditionError("level must be 27 or 36");
  throw PreconditionError("p = " + std::to_string(p) + " is outside the residue class for level " +
                          std::to_string(level));
}

// Hecke decomposition holds for p != 3 at level 27 and p >= 5 at level 36.
void require_hecke_prime(std::int64_t level, std::int64_t p) {
  require_prime(p);
  if (level == 27 && p != 3) return;
  if (level == 36 && p >= 5) return;
  if (level != 27 && level != 36) throw PreconditionError("level must be 27 or 36");
  throw PreconditionError("p = " + std::to_string(p) + " is not admissible at level " +
                          std::to_string(level));
}

std::string describe_difference(std::optional<Exponent> e) {
  return e ? std::to_string(*e) : std::string("none");
}

std::string mock_name(std::int64_t level) { return curve(level).mock_derivative; }
std::string newform_name(std::int64_t level) { return curve(level).newform; }

// Asserts f == g on their shared precision, which must reach `needed`.
void expect_equal(CheckReport& r, const std::string& what, const QSeries& f, const QSeries& g,
                  Exponent needed) {
  Exponent shared = std::min(f.prec(), g.prec());
  auto diff = first_difference(f, g);
  r.expect(what + ": first differing exponent", "none", describe_difference(diff), !diff);
  r.expect(what + ": shared precision", ">=" + std::to_string(needed), std::to_string(shared),
           shared >= needed);
}

}  // namespace

std::optional<std::string> ineligibility_reason(const CurveSpec& curve, std::int64_t p) {
  if (!is_prime(p)) return "p is not prime";
  if (!is_inert(p, curve.cm_disc)) return "p not inert in the CM field";
  if (curve.level % p == 0 || ((curve.level == 36 || curve.level == 144) && p < 5)) {
    return "p | N or p < 5";
  }
  return std::nullopt;
}

CheckReport check_valuation(const CurveSpec& curve, std::int64_t p, int m, ExpansionCache& cache) {
  require_eligible(curve, p);
  if (m < 0) throw PreconditionError("m must be nonnegative");
  CheckReport r;
  r.check_id = "check_valuation";
  r.add_param("curve", curve.level);
  r.add_param("p", p);
  r.add_param("m", m);
  Exponent pk = checked_pow(p, 2 * m + 1);
  QSeries G = cache.get(curve.mock_derivative, checked_add(pk, 1));
  Integer c = G.coefficient(pk);
  r.add_param("prec", G.prec());
  r.inform("C(p^(2m+1))", c.get_str());
  Valuation v = padic_valuation(c, p);
  r.expect("v_p(C(p^(2m+1)))", std::to_string(m), v.to_string(), v == Valuation(m));
  r.finalize();
  return r;
}

CheckReport check_limit(const CurveSpec& curve, std::int64_t p, int m, std::int64_t coefficients,
                        ExpansionCache& cache) {
  require_eligible(curve, p);
  if (m < 0) throw PreconditionError("m must be nonnegative");
  if (coefficients < 1) throw PreconditionError("K must be positive");
  CheckReport r;
  r.check_id = "check_limit";
  r.add_param("curve", curve.level);
  r.add_param("p", p);
  r.add_param("m", m);
  r.add_param("K", coefficients);
  Exponent pk = checked_pow(p, 2 * m + 1);
  Exponent prec = checked_add(checked_mul(coefficients, pk), 1);
  r.add_param("prec", prec);

  QSeries G = cache.get(curve.mock_derivative, prec);
  QSeries g = cache.get(curve.newform, coefficients + 1);
  Integer c = G.coefficient(pk);
  QSeries GU = apply_U(G, pk);
  QSeries diff = sub(GU, scale(g, c));
  Exponent lo = std::min<Exponent>(0, GU.order());
  Exponent hi = coefficients + 1;
  Valuation v = padic_valuation_range(diff, p, lo, hi);
  r.inform("C(p^(2m+1))", c.get_str());
  r.expect("v_p(G|U(p^(2m+1)) - C(p^(2m+1)) g)", ">=" + std::to_string(2 * m + 1), v.to_string(),
           v.at_least(2 * m + 1));
  r.note("certified on exponents [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  r.finalize();
  return r;
}

CheckReport check_congruence(std::int64_t level, std::int64_t p, int m, ExpansionCache& cache) {
  require_psi_class(level, p);
  if (level == 36 && p < 5) throw PreconditionError("level 36 needs p >= 5");
  if (m < 0) throw PreconditionError("m must be nonnegative");
  CheckReport r;
  r.check_id = "check_congruence";
  r.add_param("level", level);
  r.add_param("p", p);
  r.add_param("m", m);
  Exponent pk = checked_pow(p, 2 * m + 1);
  QSeries G = cache.get(mock_name(level), checked_add(pk, 1));
  Integer c_pk = G.coefficient(pk);
  Integer c_p = G.coefficient(p);
  Integer modulus = power(p, m + 1);
  Integer rhs = power(p, m) * c_p * (m % 2 == 0 ? 1 : -1);
  Integer lhs_mod = mod_positive(c_pk, modulus);
  Integer rhs_mod = mod_positive(rhs, modulus);
  r.inform("C(p)", c_p.get_str());
  r.inform("C(p^(2m+1))", c_pk.get_str());
  r.inform("modulus", modulus.get_str());
  r.expect("C(p^(2m+1)) mod p^(m+1)", rhs_mod.get_str(), lhs_mod.get_str(), lhs_mod == rhs_mod);
  r.finalize();
  return r;
}

CheckReport check_hecke_decomposition(std::int64_t level, std::int64_t p, int n, Exponent prec,
                                      ExpansionCache& cache) {
  require_hecke_prime(level, p);
  if (n < 1) throw PreconditionError("n must be positive");
  if (prec < 2) throw PreconditionError("prec must be at least 2");
  CheckReport r;
  r.check_id = "check_hecke_decomposition";
  r.add_param("level", level);
  r.add_param("p", p);
  r.add_param("n", n);
  r.add_param("prec", prec);
  Exponent pn = checked_pow(p, n);
  QSeries G = cache.get(mock_name(level), checked_mul(pn, prec));
  QSeries g = cache.get(newform_name(level), prec);
  Integer c = G.coefficient(pn);
  QSeries lhs = hecke(G, 2, p, n);
  QSeries H = build_H(level, pn, prec);
  QSeries rhs = add(scale(H, Integer(static_cast<long>(pn))), scale(g, c));
  r.inform("C(p^n)", c.get_str());
  expect_equal(r, "G|T2(p^n) vs p^n H + C g", lhs, rhs, prec);
  r.finalize();
  return r;
}

CheckReport check_theta_psi(std::int64_t level, std::int64_t p, Exponent prec, int m_max,
                            ExpansionCache& cache) {
  require_psi_class(level, p);
  if (prec < 2) throw PreconditionError("prec must be at least 2");
  if (m_max < 0) throw PreconditionError("m_max must be nonnegative");
  CheckReport r;
  r.check_id = "check_theta_psi";
  r.add_param("level", level);
  r.add_param("p", p);
  r.add_param("prec", prec);
  r.add_param("m_max", m_max);
  QSeries psi = build_psi(level, p, prec);
  QSeries theta_psi = theta(psi);
  QSeries G = cache.get(mock_name(level), checked_mul(p, prec));
  expect_equal(r, "G|T2(p) vs -Theta(psi_p)", hecke(G, 2, p, 1), negate(theta_psi), prec);

  for (int m = 0; m <= m_max; ++m) {
    Exponent pk = checked_pow(p, 2 * m + 1);
    QSeries big = cache.get(mock_name(level), checked_mul(pk, prec));
    QSeries rhs = scale(theta_psi, power(p, m) * (m % 2 == 0 ? -1 : 1));
    QSeries diff = sub(apply_U(big, pk), rhs);
    Valuation v = padic_valuation_range(diff, p, -p, prec);
    r.expect("m=" + std::to_string(m) + ": v_p(G|U(p^(2m+1)) - (-1)^(m+1) p^m Theta(psi_p))",
             ">=" + std::to_string(m + 1), v.to_string(), v.at_least(m + 1));
  }
  r.finalize();
  return r;
}

CheckReport check_residue(std::int64_t level, std::int64_t p, Exponent prec,
                          ExpansionCache& cache) {
  require_psi_class(level, p);
  if (prec < 2) throw PreconditionError("prec must be at least 2");
  CheckReport r;
  r.check_id = "check_residue";
  r.add_param("level", level);
  r.add_param("p", p);
  r.add_param("prec", prec);
  QSeries psi = build_psi(level, p, prec);
  QSeries G = cache.get(mock_name(level), checked_add(std::max(p, prec), 2));
  QSeries product = mul(G, psi);
  Integer constant = product.coefficient(0);
  Integer c_psi = psi.coefficient(1);
  Integer c_p = G.coefficient(p);
  r.expect("constant term of G*psi_p", "0", constant.get_str(), sgn(constant) == 0);
  r.expect("C_p (q-coefficient of psi_p)", Integer(-c_p).get_str(), c_psi.get_str(),
           c_psi == -c_p);
  r.finalize();
  return r;
}

CheckReport check_nondivisibility(const CurveSpec& curve, std::int64_t p, ExpansionCache& cache) {
  require_eligible(curve, p);
  CheckReport r;
  r.check_id = "check_nondivisibility";
  r.add_param("curve", curve.level);
  r.add_param("p", p);
  QSeries G = cache.get(curve.mock_derivative, checked_add(p, 1));
  Integer c = G.coefficient(p);
  Valuation v = padic_valuation(c, p);
  r.inform("C(p)", c.get_str());
  r.expect("v_p(C(p))", "0", v.to_string(), v == Valuation(0));
  r.finalize();
  return r;
}

CheckReport check_twist_consistency(Exponent prec,
                                    std::span<const std::pair<std::int64_t, int>> samples,
                                    std::int64_t coefficients, ExpansionCache& cache) {
  if (prec < 1 || coefficients < 1) throw PreconditionError("prec and K must be positive");
  CheckReport r;
  r.check_id = "check_twist_consistency";
  r.add_param("prec", prec);
  r.add_param("K", coefficients);

  for (const auto& c : curves()) {
    if (!c.newform_twist) continue;
    QSeries direct = cache.get(c.newform, prec);
    QSeries twisted = expand_recipe(*c.newform_twist, prec,
                                    [&cache](std::string_view b, Exponent p) { return cache.get(b, p); });
    expect_equal(r, c.newform + " eta quotient vs " + recipe_to_string(*c.newform_twist), direct,
                 twisted, prec);
  }

  for (auto [p, m] : samples) {
    require_prime(p);
    Exponent pk = checked_pow(p, 2 * m + 1);
    QSeries G = cache.get("G32", checked_add(checked_mul(coefficients, pk), 1));
    QSeries lhs = apply_U(twist(G, 8), pk);
    QSeries rhs = scale(twist(apply_U(G, pk), 8), Integer(kronecker(8, pk)));
    expect_equal(r, "U(p^(2m+1)) commutation at p=" + std::to_string(p) + " m=" + std::to_string(m),
                 lhs, rhs, coefficients);
  }
  r.finalize();
  return r;
}

CheckReport check_twist_consistency(Exponent prec, ExpansionCache& cache) {
  static constexpr std::pair<std::int64_t, int> kSamples[] = {{3, 0}, {7, 0}};
  return check_twist_consistency(prec, kSamples, 50, cache);
}

CheckReport check_support(const CurveSpec& curve, Exponent prec, ExpansionCache& cache) {
  if (prec < 2) throw PreconditionError("prec must be at least 2");
  CheckReport r;
  r.check_id = "check_support";
  r.add_param("curve", curve.level);
  r.add_param("prec", prec);

  for (const std::string& name : {curve.newform, curve.mock_derivative}) {
    const CatalogEntry& entry = catalog_entry(name);
    QSeries f = cache.get(name, prec);
    std::optional<Exponent> offender;
    for (const auto& [e, c] : f.terms()) {
      if (mod_floor(e - entry.support_residue, entry.support_modulus) != 0) {
        offender = e;
        break;
      }
    }
    r.expect(name + ": first exponent outside " + std::to_string(entry.support_residue) + " mod " +
                 std::to_string(entry.support_modulus),
             "none", describe_difference(offender), !offender);
  }

  // Even prime powers sit outside the support of G, so T_2(p^(2m)) has no
  // cusp-form component.
  std::vector<std::pair<std::int64_t, int>> samples;
  if (curve.level == 27) samples = {{2, 1}, {2, 2}, {5, 1}};
  if (curve.level == 36) samples = {{5, 1}};
  const Exponent shared = 20;
  for (auto [p, m] : samples) {
    Exponent pk = checked_pow(p, 2 * m);
    QSeries G = cache.get(curve.mock_derivative, checked_mul(pk, shared));
    Integer c = G.coefficient(pk);
    std::string tag = "p=" + std::to_string(p) + " m=" + std::to_string(m);
    r.expect(tag + ": C(p^(2m))", "0", c.get_str(), sgn(c) == 0);
    QSeries lhs = hecke(G, 2, p, 2 * m);
    QSeries rhs = scale(build_H(curve.level, pk, shared), Integer(static_cast<long>(pk)));
    expect_equal(r, tag + ": G|T2(p^(2m)) vs p^(2m) H", lhs, rhs, shared);
  }
  r.finalize();
  return r;
}

}  // namespace qmod
