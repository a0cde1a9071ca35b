#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "qmod/cache.hpp"
#include "qmod/catalog.hpp"
#include "qmod/report.hpp"

namespace qmod {

/// Why p is excluded from the p-adic limit checks for this curve, or nullopt
/// when it is eligible: p must be inert in the CM field, must not divide the
/// conductor, and must be >= 5 for conductors 36 and 144.
std::optional<std::string> ineligibility_reason(const CurveSpec& curve, std::int64_t p);

/// v_p(C(p^(2m+1))) == m, where C are the coefficients of G_N.
CheckReport check_valuation(const CurveSpec& curve, std::int64_t p, int m, ExpansionCache& cache);

/// Division-free form of the p-adic limit statement:
///   v_p(G | U(p^(2m+1)) - C(p^(2m+1)) g) >= 2m + 1
/// on the coefficients of q^0 .. q^K. Together with check_valuation this is
/// equivalent to v_p(G | U / C - g) >= m + 1 on that range.
CheckReport check_limit(const CurveSpec& curve, std::int64_t p, int m, std::int64_t coefficients,
                        ExpansionCache& cache);

/// C(p^(2m+1)) == (-1)^m p^m C(p) mod p^(m+1), levels 27 and 36.
CheckReport check_congruence(std::int64_t level, std::int64_t p, int m, ExpansionCache& cache);

/// G | T_2(p^n) == p^n H_{p^n} + C(p^n) g on `prec` shared coefficients.
CheckReport check_hecke_decomposition(std::int64_t level, std::int64_t p, int n, Exponent prec,
                                      ExpansionCache& cache);

/// G | T_2(p) == -Theta(psi_p) on `prec` shared coefficients, and for
/// m = 0..m_max the consequence
///   G | U(p^(2m+1)) == (-1)^(m+1) p^m Theta(psi_p) mod p^(m+1).
CheckReport check_theta_psi(std::int64_t level, std::int64_t p, Exponent prec, int m_max,
                            ExpansionCache& cache);

/// Constant term of G psi_p vanishes and the q-coefficient of psi_p is -C(p).
CheckReport check_residue(std::int64_t level, std::int64_t p, Exponent prec,
                          ExpansionCache& cache);

/// p does not divide C(p), by direct expansion.
CheckReport check_nondivisibility(const CurveSpec& curve, std::int64_t p, ExpansionCache& cache);

/// Both recipes for g64 and g144 agree to `prec`, and
///   (G32 (x) chi8) | U(p^(2m+1)) == chi8(p^(2m+1)) (G32 | U(p^(2m+1)) (x) chi8)
/// on `coefficients` coefficients for each (p, m) sample.
CheckReport check_twist_consistency(Exponent prec,
                                    std::span<const std::pair<std::int64_t, int>> samples,
                                    std::int64_t coefficients, ExpansionCache& cache);
CheckReport check_twist_consistency(Exponent prec, ExpansionCache& cache);

/// Support lattices of g and G to `prec`; at levels 27 and 36 also
/// C(p^(2m)) == 0 and G | T_2(p^(2m)) == p^(2m) H_{p^(2m)} for small p^(2m).
CheckReport check_support(const CurveSpec& curve, Exponent prec, ExpansionCache& cache);

}  // namespace qmod
