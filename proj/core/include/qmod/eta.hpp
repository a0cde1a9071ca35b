#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qmod/qseries.hpp"

namespace qmod {

struct EtaFactor {
  std::int64_t delta;
  std::int64_t power;
  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// prod_delta eta(delta z)^power at a given level. Factors are kept sorted
/// by delta with zero powers removed.
class EtaQuotient {
 public:
  EtaQuotient(std::vector<EtaFactor> factors, std::int64_t level);

  const std::vector<EtaFactor>& factors() const noexcept { return factors_; }
  std::int64_t level() const noexcept { return level_; }

  /// sum(delta * power) / 24; throws ShiftError when not integral.
  Exponent shift() const;
  bool has_integral_shift() const;
  /// sum(power) / 2
  mpq_class weight() const;
  /// gcd of the deltas: the expansion lives on shift() + lattice() * Z.
  std::int64_t lattice() const;

  /// z -> t z, i.e. every delta multiplied by t. The level is unchanged.
  EtaQuotient rescaled(std::int64_t t) const;
  EtaQuotient pow(std::int64_t k) const;
  friend EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b);

  /// "[(3,2),(9,2)]"
  std::string to_string() const;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  std::vector<EtaFactor> factors_;
  std::int64_t level_;
};

/// prod_{n >= 1} (1 - q^(delta n)) + O(q^prec) via the pentagonal number
/// theorem.
QSeries euler_product(std::int64_t delta, Exponent prec);

/// Exact expansion of an eta quotient to O(q^prec). Positive powers multiply
/// by the lacunary Euler product, negative powers divide by it.
/// Throws ShiftError for a non-integral shift and PrecisionError when
/// prec <= shift.
QSeries eta_quotient_expand(const EtaQuotient& eq, Exponent prec);

/// q -> q^t on an expansion. Same map as the V operator:
/// prec becomes t * (prec - 1) + 1.
QSeries substitute_qpower(const QSeries& f, std::int64_t t);

struct CuspOrder {
  std::int64_t denominator;  // cusp c/d with d | N
  mpq_class order;
};

/// Ligozat's formula for the order of vanishing of an eta quotient at each
/// cusp class of Gamma0(N), one entry per divisor d of N (ascending):
///   (N/24) * sum_delta gcd(d,delta)^2 r_delta / (gcd(d, N/d) d delta).
/// The entry d = N is the cusp at infinity.
/// Throws LevelMismatchError if some delta does not divide N.
std::vector<CuspOrder> cusp_orders(const EtaQuotient& eq, std::int64_t level);
std::vector<CuspOrder> cusp_orders(const EtaQuotient& eq);

std::vector<std::int64_t> divisors(std::int64_t n);

}  // namespace qmod
