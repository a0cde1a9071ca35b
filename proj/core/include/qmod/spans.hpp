#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmod/eta.hpp"
#include "qmod/qseries.hpp"

namespace qmod {

/// Member of a spanning family: an eta quotient (so its cusp orders can be
/// read off) together with its expansion.
struct FamilyMember {
  std::string label;
  EtaQuotient recipe;
  QSeries series;
};

/// Weight-2 forms in M_2^infty(level) that span every principal part up to
/// q^-max_pole:
///   level 27: g27 L1^d and g27 L1^d L2,
///   level 36: g36 L(2z)^d.
/// Only members whose leading exponent (computed from the eta shift) is
/// >= -max_pole are returned. Every returned series has prec >= prec.
std::vector<FamilyMember> spanning_family(std::int64_t level, std::int64_t max_pole,
                                          Exponent prec);

/// Rows sorted by strictly increasing leading exponent, each with leading
/// coefficient 1 and zero coefficients at every other row's pivot.
class EchelonBasis {
 public:
  EchelonBasis() = default;
  explicit EchelonBasis(std::vector<QSeries> rows);

  const std::vector<QSeries>& rows() const noexcept { return rows_; }
  /// Row whose leading exponent is e, if any.
  const QSeries* row_with_pivot(Exponent e) const;
  std::vector<Exponent> pivots() const;

  friend bool operator==(const EchelonBasis&, const EchelonBasis&) = default;

 private:
  std::vector<QSeries> rows_;
};

/// Integer row reduction with +-1 pivots. Members that reduce to zero are
/// dropped; a residual non-unit pivot throws EliminationError naming the
/// exponent. The result is the reduced echelon form, so it does not depend on
/// the input order.
EchelonBasis echelonize(std::vector<QSeries> family);

/// The unique H_m in M_2^infty(level) with integer coefficients and
///   level 27: H_m = q^-m + O(q^2), m >= -1, m != 0,
///   level 36: H_m = q^-m + O(q^3), m >= -1 odd.
/// Throws UnconstructibleError for other m.
QSeries build_H(std::int64_t level, std::int64_t m, Exponent prec);

/// Weight-0 function holomorphic away from infinity,
///   level 27 (p = 2 mod 3): psi_p = q^-p + C_p q + O(q^4), polynomial in L1, L2;
///   level 36 (p = 5 mod 6): psi_p = q^-p + C_p q + O(q^7), polynomial in
///     psi2 = L(2z) and psi3 = L(z) L(2z) - 1.
/// Throws UnconstructibleError for p in the wrong residue class.
QSeries build_psi(std::int64_t level, std::int64_t p, Exponent prec);

/// Generators used by build_psi, exposed for inspection.
QSeries psi2_level36(Exponent prec);
QSeries psi3_level36(Exponent prec);

}  // namespace qmod
